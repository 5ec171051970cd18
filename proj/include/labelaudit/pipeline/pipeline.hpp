#pragma once

#include <map>
#include <string>
#include <vector>

#include "labelaudit/pipeline/config.hpp"

namespace labelaudit::pipeline {

enum class Stage { Ingest, Train, Classify, Derive, Templates, Compare };

std::string to_string(Stage stage);

// Comma-separated stage names ("ingest,train"). Throws ConfigError on an
// unknown name.
std::vector<Stage> parse_stages(const std::string& csv);

// All stages in dependency order.
std::vector<Stage> all_stages();

struct StageSummary {
  Stage stage = Stage::Ingest;
  std::map<std::string, size_t> counts;
};

struct PipelineResult {
  std::vector<StageSummary> stages;
};

// Runs the requested stages in dependency order against staged artifacts
// under out_dir. Rerunning with identical inputs and seeds rewrites
// byte-identical artifacts. Throws MissingDependency naming the absent
// upstream artifact.
PipelineResult run_pipeline(const PipelineConfig& config,
                            const std::vector<Stage>& stages);

StageSummary run_stage(const PipelineConfig& config, Stage stage);

}  // namespace labelaudit::pipeline
