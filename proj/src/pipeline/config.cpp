#include "labelaudit/pipeline/config.hpp"

#include <fstream>

#include "labelaudit/errors.hpp"

namespace labelaudit::pipeline {

namespace {

std::string trim(const std::string& s) {
  size_t begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  size_t end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  try {
    if constexpr (std::is_same_v<T, double>) return std::stod(value);
    else if constexpr (std::is_same_v<T, uint64_t>) return std::stoull(value);
    else return static_cast<T>(std::stoll(value));
  } catch (...) {
    throw ConfigError("bad value for " + key + ": '" + value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("bad boolean for " + key + ": '" + value + "'");
}

}  // namespace

std::string PipelineConfig::resolved_policies_dir() const {
  if (!policies_dir.empty()) return policies_dir;
  return corpus_dir + "/policies";
}

std::string PipelineConfig::resolved_labels_file() const {
  if (!labels_file.empty()) return labels_file;
  return corpus_dir + "/labels.json";
}

std::string PipelineConfig::resolved_metadata_file() const {
  if (!metadata_file.empty()) return metadata_file;
  return corpus_dir + "/metadata.jsonl";
}

std::string PipelineConfig::resolved_models_dir() const {
  if (!models_dir.empty()) return models_dir;
  return out_dir + "/models";
}

void apply_config_value(PipelineConfig& c, const std::string& key,
                        const std::string& value) {
  if (key == "corpus_dir") c.corpus_dir = value;
  else if (key == "policies_dir") c.policies_dir = value;
  else if (key == "labels_file") c.labels_file = value;
  else if (key == "metadata_file") c.metadata_file = value;
  else if (key == "annotated_corpus") c.annotated_corpus = value;
  else if (key == "embeddings_file") c.embeddings_file = value;
  else if (key == "models_dir") c.models_dir = value;
  else if (key == "rules_file") c.rules_file = value;
  else if (key == "registry_file") c.registry_file = value;
  else if (key == "templates_dir") c.templates_dir = value;
  else if (key == "out_dir") c.out_dir = value;
  else if (key == "learning_rate") c.learning_rate = parse_number<double>(key, value);
  else if (key == "epochs") c.epochs = parse_number<int>(key, value);
  else if (key == "l2") c.l2 = parse_number<double>(key, value);
  else if (key == "split_ratio") c.split_ratio = parse_number<double>(key, value);
  else if (key == "split_seed") c.split_seed = parse_number<uint64_t>(key, value);
  else if (key == "train_seed") c.train_seed = parse_number<uint64_t>(key, value);
  else if (key == "bootstrap_seed") c.bootstrap_seed = parse_number<uint64_t>(key, value);
  else if (key == "bootstrap_resamples") c.bootstrap_resamples = parse_number<int>(key, value);
  else if (key == "classify_threshold") c.classify_threshold = parse_number<double>(key, value);
  else if (key == "template_threshold") c.template_threshold = parse_number<double>(key, value);
  else if (key == "template_one_sided") c.template_one_sided = parse_bool(key, value);
  else if (key == "short_item_limit") c.short_item_limit = parse_number<int>(key, value);
  else if (key == "jobs") c.jobs = parse_number<int>(key, value);
  else throw ConfigError("unknown config key: '" + key + "'");
}

PipelineConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  PipelineConfig config;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": expected key = value");
    }
    apply_config_value(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return config;
}

}  // namespace labelaudit::pipeline
