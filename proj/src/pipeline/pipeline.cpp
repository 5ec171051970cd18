#include "labelaudit/pipeline/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "labelaudit/classify/annotate.hpp"
#include "labelaudit/classify/metrics.hpp"
#include "labelaudit/classify/train.hpp"
#include "labelaudit/compare/report.hpp"
#include "labelaudit/derive/derive.hpp"
#include "labelaudit/embed/embedding.hpp"
#include "labelaudit/errors.hpp"
#include "labelaudit/ingest/app_records.hpp"
#include "labelaudit/ingest/corpus.hpp"
#include "labelaudit/ingest/readability.hpp"
#include "labelaudit/ingest/segment.hpp"

namespace labelaudit::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;

std::string to_string(Stage stage) {
  switch (stage) {
    case Stage::Ingest: return "ingest";
    case Stage::Train: return "train";
    case Stage::Classify: return "classify";
    case Stage::Derive: return "derive";
    case Stage::Templates: return "templates";
    case Stage::Compare: return "compare";
  }
  return "?";
}

std::vector<Stage> all_stages() {
  return {Stage::Ingest, Stage::Train,     Stage::Classify,
          Stage::Derive, Stage::Templates, Stage::Compare};
}

std::vector<Stage> parse_stages(const std::string& csv) {
  std::vector<Stage> out;
  std::stringstream in(csv);
  std::string name;
  while (std::getline(in, name, ',')) {
    if (name.empty()) continue;
    bool found = false;
    for (Stage stage : all_stages()) {
      if (to_string(stage) == name) {
        out.push_back(stage);
        found = true;
        break;
      }
    }
    if (!found) throw ConfigError("unknown stage: '" + name + "'");
  }
  if (out.empty()) throw ConfigError("no stages requested");
  return out;
}

namespace {

void ensure_dir(const std::string& path) {
  std::error_code ec;
  fs::create_directories(path, ec);
  if (ec) throw IOFailure("cannot create directory: " + path);
}

void require_artifact(const std::string& path, const std::string& name) {
  if (!fs::exists(path)) throw MissingDependency(name);
}

std::vector<json> read_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IOFailure("cannot open: " + path);
  std::vector<json> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) throw SchemaError("malformed JSON line in " + path);
    out.push_back(std::move(j));
  }
  return out;
}

class JsonlWriter {
 public:
  explicit JsonlWriter(const std::string& path) : path_(path), out_(path) {
    if (!out_) throw IOFailure("cannot write: " + path);
  }
  void write(const json& j) { out_ << j.dump() << '\n'; }
  void close() {
    out_.close();
    if (!out_) throw IOFailure("write failed: " + path_);
  }

 private:
  std::string path_;
  std::ofstream out_;
};

json annotation_to_json(const classify::SegmentAnnotation& a) {
  json attrs = json::object();
  for (const auto& [attribute, values] : a.attributes) {
    attrs[to_string(attribute)] = values;
  }
  return json{{"policy_id", a.policy_id},
              {"index", a.segment_index},
              {"practices", a.practices},
              {"attributes", attrs}};
}

classify::SegmentAnnotation annotation_from_json(const json& j) {
  classify::SegmentAnnotation a;
  a.policy_id = j.at("policy_id").get<std::string>();
  a.segment_index = j.at("index").get<int>();
  for (const json& p : j.at("practices")) a.practices.insert(p.get<std::string>());
  for (const auto& [name, values] : j.at("attributes").items()) {
    Attribute attribute = parse_attribute(name);
    for (const json& v : values) a.attributes[attribute].insert(v.get<std::string>());
  }
  return a;
}

json derived_entry_to_json(const derive::LabelEntry& entry) {
  json j;
  j["privacy_type"] = to_string(entry.key.privacy_type);
  if (entry.key.purpose) j["purpose"] = to_string(*entry.key.purpose);
  if (entry.key.category) j["category"] = to_string(*entry.key.category);
  j["uncertainty"] = entry.uncertainty;
  j["supporting_segments"] = entry.supporting_segments;
  return j;
}

derive::LabelEntry derived_entry_from_json(const json& j) {
  derive::LabelEntry entry;
  entry.key.privacy_type = parse_privacy_type(j.at("privacy_type").get<std::string>());
  if (j.contains("purpose")) {
    entry.key.purpose = parse_label_purpose(j.at("purpose").get<std::string>());
  }
  if (j.contains("category")) {
    entry.key.category = parse_data_category(j.at("category").get<std::string>());
  }
  entry.uncertainty = j.at("uncertainty").get<double>();
  for (const json& s : j.at("supporting_segments")) {
    entry.supporting_segments.insert(s.get<int>());
  }
  return entry;
}

// Artifact paths under out_dir.
struct Artifacts {
  explicit Artifacts(const PipelineConfig& config) : out(config.out_dir) {}
  std::string out;

  std::string ingest_dir() const { return out + "/ingest"; }
  std::string segments() const { return ingest_dir() + "/segments.jsonl"; }
  std::string sentences() const { return ingest_dir() + "/sentences.jsonl"; }
  std::string declared() const { return ingest_dir() + "/declared_labels.json"; }
  std::string metadata() const { return ingest_dir() + "/metadata.jsonl"; }
  std::string train_dir() const { return out + "/train"; }
  std::string metrics() const { return train_dir() + "/metrics.json"; }
  std::string classify_dir() const { return out + "/classify"; }
  std::string annotations() const { return classify_dir() + "/annotations.jsonl"; }
  std::string derive_dir() const { return out + "/derive"; }
  std::string derived() const { return derive_dir() + "/derived_labels.json"; }
  std::string templates_dir() const { return out + "/templates"; }
  std::string template_scan() const { return templates_dir() + "/template_scan.json"; }
  std::string compare_dir() const { return out + "/compare"; }
};

derive::ConversionRuleSet load_rules(const PipelineConfig& config) {
  if (config.rules_file.empty()) return derive::ConversionRuleSet::defaults();
  return derive::ConversionRuleSet::load(config.rules_file);
}

derive::F1Registry load_registry(const PipelineConfig& config) {
  if (config.registry_file.empty()) return derive::F1Registry::defaults();
  return derive::F1Registry::load(config.registry_file);
}

// ---------------------------------------------------------------- ingest --

StageSummary run_ingest(const PipelineConfig& config) {
  StageSummary summary;
  summary.stage = Stage::Ingest;
  Artifacts artifacts(config);
  ensure_dir(artifacts.ingest_dir());

  std::string policies_dir = config.resolved_policies_dir();
  if (!fs::is_directory(policies_dir)) {
    throw ConfigError("policies directory not found: " + policies_dir);
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(policies_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".html") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());

  JsonlWriter segments_out(artifacts.segments());
  JsonlWriter sentences_out(artifacts.sentences());
  size_t segment_count = 0, sentence_count = 0, failures = 0;
  for (const auto& path : files) {
    std::ifstream in(path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::string policy_id = path.stem().string();
    ingest::CleanDocument doc;
    try {
      doc = ingest::extract_readable_html(buffer.str(), policy_id);
    } catch (const EmptyDocument&) {
      ++failures;
      continue;
    }
    for (const auto& segment : ingest::segment_document(
             doc, static_cast<size_t>(config.short_item_limit))) {
      segments_out.write(json{{"policy_id", segment.policy_id},
                              {"index", segment.index},
                              {"text", segment.text},
                              {"tokens", segment.tokens}});
      ++segment_count;
    }
    for (const auto& sentence : ingest::split_sentences(doc)) {
      sentences_out.write(json{{"policy_id", sentence.policy_id},
                               {"text", sentence.text},
                               {"tokens", sentence.tokens}});
      ++sentence_count;
    }
  }
  segments_out.close();
  sentences_out.close();

  // Declared labels, validated and rewritten in app_id order.
  auto labels = ingest::load_declared_labels(config.resolved_labels_file());
  std::sort(labels.begin(), labels.end(),
            [](const auto& a, const auto& b) { return a.app_id < b.app_id; });
  json label_array = json::array();
  for (const auto& label : labels) {
    label_array.push_back(json::parse(ingest::serialize_declared_label(label)));
  }
  compare::write_json_report(
      json{{"schema_version", compare::kReportSchemaVersion}, {"apps", label_array}},
      artifacts.declared());

  // Metadata with the derived policy ids.
  auto metadata = ingest::load_app_metadata(config.resolved_metadata_file());
  std::sort(metadata.begin(), metadata.end(),
            [](const auto& a, const auto& b) { return a.app_id < b.app_id; });
  JsonlWriter metadata_out(artifacts.metadata());
  for (const auto& meta : metadata) {
    metadata_out.write(json{
        {"app_id", meta.app_id},
        {"price_model", to_string(meta.price_model)},
        {"content_rating", to_string(meta.content_rating)},
        {"policy_id", ingest::policy_id_from_url(meta.policy_url)},
        {"policy_url", meta.policy_url},
        {"seller", meta.seller}});
  }
  metadata_out.close();

  summary.counts["policies"] = files.size() - failures;
  summary.counts["extraction_failures"] = failures;
  summary.counts["segments"] = segment_count;
  summary.counts["sentences"] = sentence_count;
  summary.counts["apps_labeled"] = labels.size();
  summary.counts["apps_with_metadata"] = metadata.size();
  return summary;
}

// ----------------------------------------------------------------- train --

StageSummary run_train(const PipelineConfig& config) {
  StageSummary summary;
  summary.stage = Stage::Train;
  if (config.annotated_corpus.empty()) throw ConfigError("annotated_corpus not set");
  if (config.embeddings_file.empty()) throw ConfigError("embeddings_file not set");

  Artifacts artifacts(config);
  ensure_dir(artifacts.train_dir());
  ensure_dir(config.resolved_models_dir());

  auto corpus = ingest::load_annotated_corpus(config.annotated_corpus);
  auto embedding = embed::load_embeddings(config.embeddings_file);

  classify::Hyperparameters hyper;
  hyper.learning_rate = config.learning_rate;
  hyper.epochs = config.epochs;
  hyper.l2 = config.l2;
  hyper.seed = config.train_seed;

  json metrics = json::object();
  size_t trained = 0, skipped = 0;
  for (Attribute attribute : kAllAttributes) {
    if (classify::relevant_segments(corpus, attribute).size() < 2) {
      ++skipped;
      continue;
    }
    auto [train_set, test_set] = classify::split_train_test(
        corpus, attribute, config.split_ratio, config.split_seed);
    classify::ClassifierModel model =
        classify::train(attribute, train_set, embedding, hyper);
    model.threshold = config.classify_threshold;
    classify::save_model(model, config.resolved_models_dir() + "/" +
                                    to_string(attribute) + ".model.json");
    ++trained;

    json entry;
    entry["train_segments"] = train_set.segments.size();
    entry["test_segments"] = test_set.segments.size();
    if (!test_set.segments.empty()) {
      classify::MetricsReport report = classify::evaluate(model, test_set, embedding);
      json per_label = json::object();
      for (const auto& [label, m] : report.per_label) {
        per_label[label] = {
            {"presence",
             {{"precision", m.presence.precision}, {"recall", m.presence.recall},
              {"f1", m.presence.f1}, {"support", m.presence.support}}},
            {"absence",
             {{"precision", m.absence.precision}, {"recall", m.absence.recall},
              {"f1", m.absence.f1}, {"support", m.absence.support}}}};
      }
      entry["per_label"] = per_label;
      entry["macro_precision"] = report.macro_precision;
      entry["macro_recall"] = report.macro_recall;
      entry["macro_f1"] = report.macro_f1;
      classify::ConfidenceInterval ci =
          classify::bootstrap_accuracy(model, test_set, embedding,
                                       config.bootstrap_resamples, config.bootstrap_seed);
      entry["bootstrap"] = {{"accuracy", ci.point},
                            {"lower", ci.lower},
                            {"upper", ci.upper},
                            {"resamples", ci.resamples}};
    }
    metrics[to_string(attribute)] = entry;
  }
  compare::write_json_report(
      json{{"schema_version", compare::kReportSchemaVersion}, {"attributes", metrics}},
      artifacts.metrics());

  summary.counts["corpus_segments"] = corpus.segments.size();
  summary.counts["attributes_trained"] = trained;
  summary.counts["attributes_skipped"] = skipped;
  return summary;
}

// -------------------------------------------------------------- classify --

classify::ClassifierStack load_stack(const std::string& models_dir) {
  classify::ClassifierStack stack;
  if (!fs::is_directory(models_dir)) throw MissingDependency("trained models");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(models_dir)) {
    if (entry.is_regular_file() && entry.path().string().ends_with(".model.json")) {
      files.push_back(entry.path());
    }
  }
  if (files.empty()) throw MissingDependency("trained models");
  for (const auto& path : files) {
    classify::ClassifierModel model = classify::load_model(path.string());
    stack[model.attribute] = std::move(model);
  }
  return stack;
}

// Segments grouped per policy, in artifact order.
struct PolicySegments {
  std::string policy_id;
  std::vector<ingest::Segment> segments;
};

std::vector<PolicySegments> read_segments(const std::string& path) {
  std::vector<PolicySegments> out;
  for (const json& j : read_jsonl(path)) {
    ingest::Segment segment;
    segment.policy_id = j.at("policy_id").get<std::string>();
    segment.index = j.at("index").get<int>();
    segment.text = j.at("text").get<std::string>();
    segment.tokens = j.at("tokens").get<std::vector<std::string>>();
    if (out.empty() || out.back().policy_id != segment.policy_id) {
      out.push_back({segment.policy_id, {}});
    }
    out.back().segments.push_back(std::move(segment));
  }
  return out;
}

// Runs worker(i) over [0, n) on `jobs` threads; any exception is rethrown.
void parallel_for(size_t n, int jobs, const std::function<void(size_t)>& worker) {
  if (jobs <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) worker(i);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(static_cast<size_t>(jobs));
  for (int t = 0; t < jobs; ++t) {
    threads.emplace_back([&, t]() {
      try {
        for (size_t i = static_cast<size_t>(t); i < n; i += static_cast<size_t>(jobs)) {
          worker(i);
        }
      } catch (...) {
        errors[static_cast<size_t>(t)] = std::current_exception();
      }
    });
  }
  for (auto& thread : threads) thread.join();
  for (const auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }
}

StageSummary run_classify(const PipelineConfig& config) {
  StageSummary summary;
  summary.stage = Stage::Classify;
  Artifacts artifacts(config);
  require_artifact(artifacts.segments(), "ingested segments");
  classify::ClassifierStack stack = load_stack(config.resolved_models_dir());
  if (config.embeddings_file.empty()) throw ConfigError("embeddings_file not set");
  auto embedding = embed::load_embeddings(config.embeddings_file);

  auto policies = read_segments(artifacts.segments());
  std::vector<std::vector<classify::SegmentAnnotation>> results(policies.size());
  parallel_for(policies.size(), config.jobs, [&](size_t i) {
    auto& annotations = results[i];
    annotations.reserve(policies[i].segments.size());
    for (const auto& segment : policies[i].segments) {
      annotations.push_back(classify::annotate(stack, segment, embedding));
    }
  });

  ensure_dir(artifacts.classify_dir());
  JsonlWriter out(artifacts.annotations());
  size_t segments = 0;
  for (const auto& annotations : results) {
    for (const auto& annotation : annotations) {
      out.write(annotation_to_json(annotation));
      ++segments;
    }
  }
  out.close();
  summary.counts["policies"] = policies.size();
  summary.counts["segments_classified"] = segments;
  return summary;
}

// ---------------------------------------------------------------- derive --

StageSummary run_derive(const PipelineConfig& config) {
  StageSummary summary;
  summary.stage = Stage::Derive;
  Artifacts artifacts(config);
  require_artifact(artifacts.annotations(), "segment annotations");
  require_artifact(artifacts.segments(), "ingested segments");
  require_artifact(artifacts.metadata(), "app metadata");

  derive::ConversionRuleSet rules = load_rules(config);
  derive::validate_rules(rules);
  derive::F1Registry registry = load_registry(config);
  // Fails fast on a rule referencing an F1-less value.
  for (const auto& rule : rules.rules) derive::entry_uncertainty(rule, registry);
  derive::entry_uncertainty(rules.data_not_collected, registry);

  // Join annotations with segment texts per policy.
  std::map<std::string, std::vector<derive::SegmentRecord>> by_policy;
  std::map<std::pair<std::string, int>, std::string> texts;
  for (const json& j : read_jsonl(artifacts.segments())) {
    texts[{j.at("policy_id").get<std::string>(), j.at("index").get<int>()}] =
        j.at("text").get<std::string>();
  }
  for (const json& j : read_jsonl(artifacts.annotations())) {
    derive::SegmentRecord record;
    record.annotation = annotation_from_json(j);
    auto it = texts.find({record.annotation.policy_id, record.annotation.segment_index});
    if (it != texts.end()) record.text = it->second;
    by_policy[record.annotation.policy_id].push_back(std::move(record));
  }

  // Derive once per policy, then assign to every app linking to it.
  std::map<std::string, derive::DerivedLabel> by_policy_label;
  for (const auto& [policy_id, records] : by_policy) {
    by_policy_label[policy_id] =
        derive::derive_policy_label(policy_id, records, rules, registry);
  }

  json apps = json::array();
  size_t entries_total = 0, dnc_labels = 0, apps_without_policy = 0;
  for (const json& meta : read_jsonl(artifacts.metadata())) {
    std::string app_id = meta.at("app_id").get<std::string>();
    std::string policy_id = meta.at("policy_id").get<std::string>();
    auto it = by_policy_label.find(policy_id);
    if (it == by_policy_label.end()) {
      ++apps_without_policy;
      continue;
    }
    json entries = json::array();
    for (const auto& [key, entry] : it->second.entries) {
      entries.push_back(derived_entry_to_json(entry));
      ++entries_total;
      if (key.privacy_type == PrivacyType::DataNotCollected) ++dnc_labels;
    }
    apps.push_back(json{{"app_id", app_id},
                        {"policy_id", policy_id},
                        {"entries", entries}});
  }

  ensure_dir(artifacts.derive_dir());
  compare::write_json_report(
      json{{"schema_version", compare::kReportSchemaVersion}, {"apps", apps}},
      artifacts.derived());

  summary.counts["policies_derived"] = by_policy_label.size();
  summary.counts["apps_labeled"] = apps.size();
  summary.counts["apps_without_policy"] = apps_without_policy;
  summary.counts["entries_derived"] = entries_total;
  summary.counts["dnc_labels"] = dnc_labels;
  return summary;
}

// ------------------------------------------------------------- templates --

StageSummary run_templates(const PipelineConfig& config) {
  StageSummary summary;
  summary.stage = Stage::Templates;
  Artifacts artifacts(config);
  require_artifact(artifacts.sentences(), "ingested sentences");
  if (config.templates_dir.empty()) throw ConfigError("templates_dir not set");
  if (config.embeddings_file.empty()) throw ConfigError("embeddings_file not set");
  auto embedding = embed::load_embeddings(config.embeddings_file);

  std::vector<templates::PolicySentences> policies;
  for (const json& j : read_jsonl(artifacts.sentences())) {
    std::string policy_id = j.at("policy_id").get<std::string>();
    if (policies.empty() || policies.back().policy_id != policy_id) {
      policies.push_back({policy_id, {}});
    }
    policies.back().embeddings.push_back(embed::embed_tokens(
        embedding, j.at("tokens").get<std::vector<std::string>>()));
  }

  auto templates_list = templates::load_templates(config.templates_dir, embedding);
  templates::MatchOptions options;
  options.threshold = config.template_threshold;
  options.one_sided = config.template_one_sided;
  templates::TemplateScanReport report =
      templates::scan_corpus(policies, templates_list, options, embedding);

  ensure_dir(artifacts.templates_dir());
  compare::emit_report(report, compare::ReportFormat::Json, artifacts.template_scan());
  compare::emit_report(report, compare::ReportFormat::Csv,
                       artifacts.templates_dir() + "/template_scan.csv");

  size_t matches = 0;
  for (const auto& [_, list] : report.matches_by_policy) matches += list.size();
  summary.counts["policies_scanned"] = report.policies_scanned;
  summary.counts["templates"] = templates_list.size();
  summary.counts["matches"] = matches;
  return summary;
}

// --------------------------------------------------------------- compare --

StageSummary run_compare(const PipelineConfig& config) {
  StageSummary summary;
  summary.stage = Stage::Compare;
  Artifacts artifacts(config);
  require_artifact(artifacts.declared(), "declared labels");
  require_artifact(artifacts.derived(), "derived labels");
  require_artifact(artifacts.metadata(), "app metadata");
  require_artifact(artifacts.annotations(), "segment annotations");

  derive::ConversionRuleSet rules = load_rules(config);
  derive::F1Registry registry = load_registry(config);
  compare::TypeUncertainty uncertainty = compare::type_uncertainties(rules, registry);
  double children_uncertainty =
      derive::round_half_up(1.0 - registry.f1(Attribute::AudienceType, value::kChildren), 2);

  // Declared labels.
  std::ifstream declared_in(artifacts.declared());
  json declared_doc = json::parse(declared_in);
  std::map<std::string, ingest::DeclaredLabel> declared;
  for (const json& j : declared_doc.at("apps")) {
    ingest::DeclaredLabel label = ingest::parse_declared_label(j.dump());
    declared[label.app_id] = std::move(label);
  }

  // Derived labels with their policy ids.
  std::ifstream derived_in(artifacts.derived());
  json derived_doc = json::parse(derived_in);
  std::map<std::string, derive::DerivedLabel> derived;
  std::map<std::string, std::string> policy_by_app;
  for (const json& j : derived_doc.at("apps")) {
    derive::DerivedLabel label;
    label.app_id = j.at("app_id").get<std::string>();
    for (const json& e : j.at("entries")) {
      derive::LabelEntry entry = derived_entry_from_json(e);
      label.entries.emplace(entry.key, entry);
    }
    policy_by_app[label.app_id] = j.at("policy_id").get<std::string>();
    derived[label.app_id] = std::move(label);
  }

  // Children flags per policy: any segment with the audiences practice and
  // a Children audience prediction.
  std::set<std::string> children_policies;
  for (const json& j : read_jsonl(artifacts.annotations())) {
    classify::SegmentAnnotation a = annotation_from_json(j);
    if (a.has_practice(practice::kInternationalSpecificAudiences) &&
        a.predicts(Attribute::AudienceType, value::kChildren)) {
      children_policies.insert(a.policy_id);
    }
  }

  // Metadata per app.
  std::map<std::string, ingest::AppMetadata> metadata;
  for (const json& j : read_jsonl(artifacts.metadata())) {
    ingest::AppMetadata meta;
    meta.app_id = j.at("app_id").get<std::string>();
    meta.price_model = parse_price_model(j.at("price_model").get<std::string>());
    meta.content_rating = parse_content_rating(j.at("content_rating").get<std::string>());
    meta.policy_url = j.at("policy_url").get<std::string>();
    meta.seller = j.value("seller", "");
    metadata[meta.app_id] = std::move(meta);
  }

  std::vector<compare::AppAuditRow> rows;
  std::vector<compare::AppDiscrepancy> discrepancies;
  size_t missing_derived = 0, dnc_contradictions = 0;
  for (const auto& [app_id, declared_label] : declared) {
    auto it = derived.find(app_id);
    if (it == derived.end()) {
      ++missing_derived;
      continue;
    }
    compare::AppAuditRow row;
    row.app_id = app_id;
    row.declared = declared_label;
    row.derived = it->second;
    auto meta_it = metadata.find(app_id);
    if (meta_it != metadata.end()) row.metadata = meta_it->second;
    auto policy_it = policy_by_app.find(app_id);
    if (policy_it != policy_by_app.end()) {
      row.children_segment = children_policies.count(policy_it->second) > 0;
    }
    compare::AppDiscrepancy d = compare::compare(row.declared, row.derived);
    if (d.dnc_contradiction) ++dnc_contradictions;
    discrepancies.push_back(std::move(d));
    rows.push_back(std::move(row));
  }

  ensure_dir(artifacts.compare_dir());
  const std::string dir = artifacts.compare_dir();
  compare::emit_report(discrepancies, compare::ReportFormat::Json,
                       dir + "/discrepancies.json");
  compare::emit_report(discrepancies, compare::ReportFormat::Csv,
                       dir + "/discrepancies.csv");
  compare::OverlapMatrix matrix = compare::overlap_matrix(discrepancies);
  compare::emit_report(matrix, compare::ReportFormat::Json, dir + "/overlap_matrix.json");
  compare::emit_report(matrix, compare::ReportFormat::Csv, dir + "/overlap_matrix.csv");
  for (compare::Facet facet :
       {compare::Facet::PriceModel, compare::Facet::ContentRating}) {
    compare::FacetReport report = compare::facet_breakdown(rows, facet, uncertainty);
    std::string stem = dir + "/facet_" + to_string(facet);
    compare::emit_report(report, compare::ReportFormat::Json, stem + ".json");
    compare::emit_report(report, compare::ReportFormat::Csv, stem + ".csv");
  }
  compare::ChildrenAuditReport children =
      compare::children_audit(rows, uncertainty, children_uncertainty);
  compare::emit_report(children, compare::ReportFormat::Json, dir + "/children_audit.json");
  compare::emit_report(children, compare::ReportFormat::Csv, dir + "/children_audit.csv");

  // Template join, when the scan artifact exists.
  if (fs::exists(artifacts.template_scan())) {
    std::ifstream scan_in(artifacts.template_scan());
    json scan_doc = json::parse(scan_in);
    templates::TemplateScanReport scan;
    scan.policies_scanned = scan_doc.at("policies_scanned").get<size_t>();
    for (const auto& [name, info] : scan_doc.at("templates").items()) {
      scan.policies_by_template[name] =
          info.at("policy_ids").get<std::vector<std::string>>();
    }
    compare::TemplateBreakdownReport breakdown =
        compare::template_breakdown(scan, rows, policy_by_app);
    compare::emit_report(breakdown, compare::ReportFormat::Json,
                         dir + "/template_breakdown.json");
    compare::emit_report(breakdown, compare::ReportFormat::Csv,
                         dir + "/template_breakdown.csv");
  }

  compare::write_json_report(
      json{{"schema_version", compare::kReportSchemaVersion},
           {"apps_declared", declared.size()},
           {"apps_compared", rows.size()},
           {"apps_missing_derived", missing_derived},
           {"dnc_contradictions", dnc_contradictions}},
      dir + "/summary.json");

  summary.counts["apps_compared"] = rows.size();
  summary.counts["apps_missing_derived"] = missing_derived;
  summary.counts["dnc_contradictions"] = dnc_contradictions;
  summary.counts["discrepancy_records"] = discrepancies.size();
  return summary;
}

}  // namespace

StageSummary run_stage(const PipelineConfig& config, Stage stage) {
  switch (stage) {
    case Stage::Ingest: return run_ingest(config);
    case Stage::Train: return run_train(config);
    case Stage::Classify: return run_classify(config);
    case Stage::Derive: return run_derive(config);
    case Stage::Templates: return run_templates(config);
    case Stage::Compare: return run_compare(config);
  }
  throw ConfigError("unknown stage");
}

PipelineResult run_pipeline(const PipelineConfig& config,
                            const std::vector<Stage>& stages) {
  std::vector<Stage> ordered;
  for (Stage stage : all_stages()) {
    if (std::find(stages.begin(), stages.end(), stage) != stages.end()) {
      ordered.push_back(stage);
    }
  }
  ensure_dir(config.out_dir);
  PipelineResult result;
  for (Stage stage : ordered) result.stages.push_back(run_stage(config, stage));
  return result;
}

}  // namespace labelaudit::pipeline
