#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "astrid/dataset.hpp"
#include "astrid/judge.hpp"
#include "astrid/metrics.hpp"

namespace astrid::cli {

// Exit-code contract: 0 success, 2 config/usage, 3 data, 4 judge/transport,
// 5 internal invariant violation.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitJudge = 4;
inline constexpr int kExitInternal = 5;

struct RunConfig {
  std::string dataset_path;
  dataset::DatasetSchema schema = dataset::DatasetSchema::Unique;
  bool schema_set = false;
  std::optional<std::uint64_t> seed;
  int parallelism = 1;
  std::string out_dir;
  std::string cache_dir;
  std::string scripted_dir;     // fixture-backed judge
  std::string templates_dir;    // per-model prompt overrides
  std::string metrics = "cf,ra,cr";
  bool keep_going = false;
  bool dry_run = false;
  bool strict = true;

  judge::JudgeEndpoint endpoint;  // live judge
  bool endpoint_configured = false;
  judge::JudgeEndpoint embeddings;
  bool embeddings_configured = false;

  // Exactly one of {scripted fixtures, live endpoint}; seed mandatory.
  void validate_for_judge_run() const;
  std::uint64_t require_seed() const;
};

// Flat TOML-subset config file: key = value lines plus [endpoint] and
// [embeddings] sections. CLI flags override file values.
void load_config_file(const std::string& path, RunConfig& config);

// Owns the judge stack (prompts, transport, cache) for one run.
struct JudgeStack {
  judge::PromptSet prompts;
  std::unique_ptr<judge::JudgeClient> base;
  std::unique_ptr<judge::JudgeClient> cached;
  judge::JudgeClient* client = nullptr;
  std::unique_ptr<judge::Embedder> embedder_base;
  std::unique_ptr<judge::Embedder> embedder_cached;
  judge::Embedder* embedder = nullptr;
};

JudgeStack build_judge_stack(const RunConfig& config, bool need_embedder);

int cmd_evaluate(const RunConfig& config);
int cmd_validate(const RunConfig& config, const std::string& metric);
int cmd_train(const RunConfig& config, const std::string& axis,
              const std::string& test_ids_path);
int cmd_report(const std::vector<std::string>& results_paths, const std::string& out_dir);
int cmd_cache(const std::string& action, const std::string& cache_dir);

// Entry point used by the binary and by end-to-end tests.
int run(const std::vector<std::string>& args);

}  // namespace astrid::cli
