#include "labelaudit/templates/templates.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "labelaudit/errors.hpp"
#include "labelaudit/ingest/segment.hpp"

namespace labelaudit::templates {

namespace fs = std::filesystem;

Template make_template(const std::string& name, const std::string& text,
                       const embed::EmbeddingModel& model) {
  // Blank lines separate paragraphs in plain-text templates.
  std::vector<std::string> paragraphs;
  std::string paragraph;
  std::istringstream in(text);
  std::string line;
  auto flush = [&]() {
    if (!paragraph.empty()) {
      paragraphs.push_back(paragraph);
      paragraph.clear();
    }
  };
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      flush();
      continue;
    }
    if (!paragraph.empty()) paragraph += ' ';
    paragraph += line;
  }
  flush();

  Template tmpl;
  tmpl.name = name;
  tmpl.sentences = ingest::split_sentences_text(name, paragraphs);
  if (tmpl.sentences.empty()) {
    throw EmptyInput("template '" + name + "' has no sentences");
  }
  tmpl.embeddings.reserve(tmpl.sentences.size());
  for (const auto& sentence : tmpl.sentences) {
    tmpl.embeddings.push_back(embed::embed_tokens(model, sentence.tokens));
  }
  return tmpl;
}

std::vector<Template> load_templates(const std::string& dir,
                                     const embed::EmbeddingModel& model) {
  if (!fs::is_directory(dir)) {
    throw IOFailure("template directory not found: " + dir);
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::vector<Template> out;
  for (const auto& path : files) {
    std::ifstream in(path);
    if (!in) throw IOFailure("cannot open template: " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    out.push_back(make_template(path.stem().string(), buffer.str(), model));
  }
  return out;
}

TemplateMatch match_template(const PolicySentences& policy,
                             const Template& tmpl, const MatchOptions& options,
                             const embed::EmbeddingModel& model) {
  (void)model;  // embeddings are precomputed; the model pins the dimension
  if (policy.embeddings.empty()) {
    throw EmptyInput("policy '" + policy.policy_id + "' has no sentences");
  }
  if (tmpl.embeddings.empty()) {
    throw EmptyInput("template '" + tmpl.name + "' has no sentences");
  }

  std::vector<bool> template_hit(tmpl.embeddings.size(), false);
  size_t policy_hits = 0;
  for (const auto& policy_vec : policy.embeddings) {
    bool hit = false;
    for (size_t t = 0; t < tmpl.embeddings.size(); ++t) {
      if (embed::cosine_similarity(policy_vec, tmpl.embeddings[t]) >
          options.threshold) {
        hit = true;
        template_hit[t] = true;
      }
    }
    if (hit) ++policy_hits;
  }
  size_t template_hits = static_cast<size_t>(
      std::count(template_hit.begin(), template_hit.end(), true));

  TemplateMatch match;
  match.policy_id = policy.policy_id;
  match.template_name = tmpl.name;
  match.policy_cover = static_cast<double>(policy_hits) /
                       static_cast<double>(policy.embeddings.size());
  match.template_cover = static_cast<double>(template_hits) /
                         static_cast<double>(tmpl.embeddings.size());
  match.matched = match.policy_cover > 0.5 &&
                  (options.one_sided || match.template_cover > 0.5);
  return match;
}

TemplateScanReport scan_corpus(const std::vector<PolicySentences>& policies,
                               const std::vector<Template>& templates,
                               const MatchOptions& options,
                               const embed::EmbeddingModel& model) {
  if (templates.empty()) throw EmptyInput("no templates loaded");
  TemplateScanReport report;
  report.policies_scanned = policies.size();
  for (const auto& tmpl : templates) report.policies_by_template[tmpl.name];
  for (const auto& policy : policies) {
    if (policy.embeddings.empty()) continue;
    for (const auto& tmpl : templates) {
      TemplateMatch match = match_template(policy, tmpl, options, model);
      if (!match.matched) continue;
      report.matches_by_policy[policy.policy_id].push_back(match);
      report.policies_by_template[tmpl.name].push_back(policy.policy_id);
    }
  }
  return report;
}

}  // namespace labelaudit::templates
