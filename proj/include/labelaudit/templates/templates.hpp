#pragma once

#include <map>
#include <string>
#include <vector>

#include "labelaudit/embed/embedding.hpp"
#include "labelaudit/ingest/document.hpp"

namespace labelaudit::templates {

// A known privacy-policy template: its sentences with embeddings
// precomputed once from the same model the classifiers use.
struct Template {
  std::string name;
  std::string source_url;
  std::vector<ingest::Sentence> sentences;
  std::vector<embed::Vector> embeddings;
};

Template make_template(const std::string& name, const std::string& text,
                       const embed::EmbeddingModel& model);

// One plain-text file per template; the file stem names the template.
std::vector<Template> load_templates(const std::string& dir,
                                     const embed::EmbeddingModel& model);

struct PolicySentences {
  std::string policy_id;
  std::vector<embed::Vector> embeddings;
};

struct MatchOptions {
  double threshold = 0.8;   // sentence pair similar iff cosine > threshold
  bool one_sided = false;   // when true, only the policy-side majority counts
};

struct TemplateMatch {
  std::string policy_id;
  std::string template_name;
  double policy_cover = 0.0;
  double template_cover = 0.0;
  bool matched = false;
};

// Covers are the fraction of sentences on each side with at least one
// similar counterpart; matched requires a strict majority (> 0.5) on the
// policy side and, unless one_sided, the template side too. Throws
// EmptyInput when either sentence set is empty.
TemplateMatch match_template(const PolicySentences& policy,
                             const Template& tmpl, const MatchOptions& options,
                             const embed::EmbeddingModel& model);

struct TemplateScanReport {
  size_t policies_scanned = 0;
  // Matched templates per policy (non-exclusive) and the reverse index.
  std::map<std::string, std::vector<TemplateMatch>> matches_by_policy;
  std::map<std::string, std::vector<std::string>> policies_by_template;
};

TemplateScanReport scan_corpus(const std::vector<PolicySentences>& policies,
                               const std::vector<Template>& templates,
                               const MatchOptions& options,
                               const embed::EmbeddingModel& model);

}  // namespace labelaudit::templates
