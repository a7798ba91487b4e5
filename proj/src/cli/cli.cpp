#include <iostream>

#include "CLI11.hpp"

#include "astrid/cli.hpp"
#include "astrid/error.hpp"

namespace astrid::cli {

namespace {

// Options shared by the judge-driven and dataset-driven subcommands. The
// config file loads first; flags parsed afterwards override it.
struct CommonFlags {
  std::string config_path;
  std::string dataset;
  std::string schema;
  std::int64_t seed = -1;
  bool seed_given = false;
  std::string scripted;
  std::string out;
  std::string cache_dir;
  std::string metrics;
  int parallelism = 0;
  bool keep_going = false;
  bool dry_run = false;
  bool lenient = false;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "config file (flat TOML subset)");
    cmd->add_option("--dataset", dataset, "dataset JSONL path");
    cmd->add_option("--schema", schema, "dataset schema: faithfulness|unique|clinical");
    cmd->add_option("--seed", seed, "run seed (mandatory, here or in config)")
        ->each([this](const std::string&) { seed_given = true; });
    cmd->add_option("--scripted", scripted, "scripted judge fixture dir");
    cmd->add_option("--out", out, "output directory");
    cmd->add_option("--cache-dir", cache_dir, "completion cache directory");
    cmd->add_option("--metrics", metrics, "metric selection, e.g. cf,ra,cr,rf");
    cmd->add_option("--parallelism", parallelism, "concurrent judge evaluations");
    cmd->add_flag("--keep-going", keep_going, "log per-record errors and continue");
    cmd->add_flag("--dry-run", dry_run, "validate config and dataset, no judge calls");
    cmd->add_flag("--lenient", lenient, "warn on unknown dataset fields instead of failing");
  }

  RunConfig to_config() const {
    RunConfig config;
    if (!config_path.empty()) load_config_file(config_path, config);
    if (!dataset.empty()) config.dataset_path = dataset;
    if (!schema.empty()) {
      config.schema = dataset::schema_from_string(schema);
      config.schema_set = true;
    }
    if (seed_given) config.seed = static_cast<std::uint64_t>(seed);
    if (!scripted.empty()) config.scripted_dir = scripted;
    if (!out.empty()) config.out_dir = out;
    if (!cache_dir.empty()) config.cache_dir = cache_dir;
    if (!metrics.empty()) config.metrics = metrics;
    if (parallelism > 0) config.parallelism = parallelism;
    if (keep_going) config.keep_going = true;
    if (dry_run) config.dry_run = true;
    if (lenient) config.strict = false;
    return config;
  }
};

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"ASTRID triad evaluation for retrieval-augmented QA systems"};
  app.require_subcommand(1);

  CommonFlags eval_flags;
  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "compute CF/RA/CR (and baselines) per record, with a summary");
  eval_flags.add_to(evaluate);

  CommonFlags validate_flags;
  std::string validate_metric = "cf";
  CLI::App* validate = app.add_subcommand(
      "validate", "ROC and correlations of a faithfulness metric against human PF");
  validate_flags.add_to(validate);
  validate->add_option("--metric", validate_metric, "cf or rf");

  CommonFlags train_flags;
  std::string train_axis;
  std::string test_ids_path;
  CLI::App* train = app.add_subcommand(
      "train", "train clinician-label predictors from the triad features");
  train_flags.add_to(train);
  train->add_option("--axis", train_axis, "harmfulness|helpfulness|inappropriateness")
      ->required();
  train->add_option("--test-ids", test_ids_path,
                    "file with explicit test ids (JSON array or one id per line)");

  std::vector<std::string> report_inputs;
  std::string report_out;
  CLI::App* report = app.add_subcommand("report", "consolidate results files");
  report->add_option("--inputs", report_inputs, "results.jsonl paths")->required();
  report->add_option("--out", report_out, "output directory")->required();

  std::string cache_action;
  std::string cache_dir_arg;
  CLI::App* cache = app.add_subcommand("cache", "inspect or clear the completion cache");
  cache->add_option("action", cache_action, "stats or clear")->required();
  cache->add_option("--cache-dir", cache_dir_arg, "cache directory")->required();

  // CLI11 wants argv-style reversed input when parsing a vector.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (evaluate->parsed()) return cmd_evaluate(eval_flags.to_config());
    if (validate->parsed()) {
      return cmd_validate(validate_flags.to_config(), validate_metric);
    }
    if (train->parsed()) {
      return cmd_train(train_flags.to_config(), train_axis, test_ids_path);
    }
    if (report->parsed()) return cmd_report(report_inputs, report_out);
    if (cache->parsed()) return cmd_cache(cache_action, cache_dir_arg);
    std::cerr << "error: no subcommand given\n";
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::Config: return kExitConfig;
      case ErrorKind::Data: return kExitData;
      case ErrorKind::Judge: return kExitJudge;
      case ErrorKind::Internal: return kExitInternal;
    }
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace astrid::cli
