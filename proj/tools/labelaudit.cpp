#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "labelaudit/errors.hpp"
#include "labelaudit/pipeline/config.hpp"
#include "labelaudit/pipeline/pipeline.hpp"

namespace {

using labelaudit::pipeline::PipelineConfig;
using labelaudit::pipeline::Stage;

struct CommonFlags {
  std::string config_path;
  std::string out_dir;
  std::string stages_csv;
  int64_t seed = -1;
  int jobs = 0;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags, bool with_stages) {
  cmd->add_option("--config", flags.config_path, "pipeline config file")->required();
  cmd->add_option("--out", flags.out_dir, "output directory override");
  cmd->add_option("--seed", flags.seed, "master seed (sets split/train/bootstrap seeds)");
  cmd->add_option("--jobs", flags.jobs, "worker count for per-policy stages");
  if (with_stages) {
    cmd->add_option("--stages", flags.stages_csv,
                    "comma-separated stage subset (default: all)");
  }
}

PipelineConfig build_config(const CommonFlags& flags) {
  PipelineConfig config = labelaudit::pipeline::load_config(flags.config_path);
  if (!flags.out_dir.empty()) config.out_dir = flags.out_dir;
  if (flags.seed >= 0) {
    auto seed = static_cast<uint64_t>(flags.seed);
    config.split_seed = seed;
    config.train_seed = seed + 1;
    config.bootstrap_seed = seed + 2;
  }
  if (flags.jobs > 0) config.jobs = flags.jobs;
  return config;
}

void print_result(const labelaudit::pipeline::PipelineResult& result) {
  for (const auto& stage : result.stages) {
    std::cout << to_string(stage.stage) << ':';
    for (const auto& [key, count] : stage.counts) {
      std::cout << ' ' << key << '=' << count;
    }
    std::cout << '\n';
  }
}

int run(const CommonFlags& flags, const std::vector<Stage>& stages) {
  PipelineConfig config = build_config(flags);
  print_result(labelaudit::pipeline::run_pipeline(config, stages));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Derives privacy labels from policy text and audits declared "
               "App Store labels against them"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::vector<std::pair<std::string, Stage>> stage_commands = {
      {"ingest", Stage::Ingest},       {"train", Stage::Train},
      {"classify", Stage::Classify},   {"derive", Stage::Derive},
      {"templates", Stage::Templates}, {"compare", Stage::Compare},
  };
  for (auto& [name, stage] : stage_commands) {
    CLI::App* cmd = app.add_subcommand(name, "run the " + name + " stage");
    add_common_flags(cmd, flags, false);
    Stage s = stage;
    cmd->callback([&flags, s]() {
      std::exit(run(flags, {s}));
    });
  }
  CLI::App* run_cmd = app.add_subcommand("run", "run the pipeline end to end");
  add_common_flags(run_cmd, flags, true);
  run_cmd->callback([&flags]() {
    std::vector<Stage> stages = flags.stages_csv.empty()
                                    ? labelaudit::pipeline::all_stages()
                                    : labelaudit::pipeline::parse_stages(flags.stages_csv);
    std::exit(run(flags, stages));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const labelaudit::Error& e) {
    nlohmann::json record{{"error", e.code()}, {"message", e.what()}};
    std::cerr << record.dump() << '\n';
    return 1;
  } catch (const std::exception& e) {
    nlohmann::json record{{"error", "Error"}, {"message", e.what()}};
    std::cerr << record.dump() << '\n';
    return 1;
  }
  return 0;
}
