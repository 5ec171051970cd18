#pragma once

#include <cstdint>
#include <string>

namespace labelaudit::pipeline {

// Flat key=value configuration mirroring this struct. Seeds are explicit —
// nothing is derived from the clock — so reruns are reproducible.
struct PipelineConfig {
  // Corpus layout; empty sub-paths default to locations under corpus_dir.
  std::string corpus_dir;
  std::string policies_dir;   // default <corpus_dir>/policies
  std::string labels_file;    // default <corpus_dir>/labels.json
  std::string metadata_file;  // default <corpus_dir>/metadata.jsonl

  std::string annotated_corpus;
  std::string embeddings_file;
  std::string models_dir;  // default <out_dir>/models
  std::string rules_file;     // empty: built-in default rule set
  std::string registry_file;  // empty: built-in default registry
  std::string templates_dir;
  std::string out_dir = "out";

  double learning_rate = 0.5;
  int epochs = 400;
  double l2 = 1e-4;
  double split_ratio = 0.8;

  uint64_t split_seed = 1;
  uint64_t train_seed = 2;
  uint64_t bootstrap_seed = 3;
  int bootstrap_resamples = 200;

  double classify_threshold = 0.5;
  double template_threshold = 0.8;
  bool template_one_sided = false;
  int short_item_limit = 20;

  int jobs = 1;

  std::string resolved_policies_dir() const;
  std::string resolved_labels_file() const;
  std::string resolved_metadata_file() const;
  std::string resolved_models_dir() const;
};

// Lines of "key = value"; '#' starts a comment. Throws ConfigError on
// unknown keys or unparsable values.
PipelineConfig load_config(const std::string& path);

// Applies one key=value override (CLI flags reuse the config key names).
void apply_config_value(PipelineConfig& config, const std::string& key,
                        const std::string& value);

}  // namespace labelaudit::pipeline
