#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "astrid/cli.hpp"
#include "astrid/error.hpp"
#include "astrid/util.hpp"
#include "reports.hpp"

namespace astrid::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct EvalEntry {
  bool ok = false;
  metrics::TriadResult result;
  std::vector<judge::Exchange> exchanges;
  std::string error_kind;
  std::string error_message;
};

std::string error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config: return "config";
    case ErrorKind::Data: return "data";
    case ErrorKind::Judge: return "judge";
    case ErrorKind::Internal: return "internal";
  }
  return "internal";
}

}  // namespace

int cmd_evaluate(const RunConfig& config) {
  config.validate_for_judge_run();
  if (config.out_dir.empty() && !config.dry_run) {
    throw ConfigError("evaluate needs an output directory (--out)");
  }

  metrics::MetricSelection selection = metrics::metric_selection_from_list(config.metrics);
  dataset::LoadResult loaded =
      dataset::load_dataset(config.dataset_path, config.schema, config.strict);
  for (const std::string& warning : loaded.warnings) {
    std::cerr << "warning: " << warning << "\n";
  }
  if (loaded.records.empty()) {
    throw ConfigError("dataset " + config.dataset_path + " is empty: nothing to evaluate");
  }

  JudgeStack stack = build_judge_stack(config, selection.answer_rel);

  if (config.dry_run) {
    std::cout << "dry run: config ok, dataset ok (" << loaded.records.size()
              << " records); no judge calls performed\n";
    return kExitOk;
  }

  const std::size_t n = loaded.records.size();
  std::vector<EvalEntry> entries(n);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};

  auto worker = [&]() {
    while (!stop.load()) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) break;
      judge::RecordingJudge recorder(*stack.client);
      judge::Judge judge{&stack.prompts, &recorder};
      EvalEntry& entry = entries[i];
      try {
        entry.result = metrics::evaluate_triplet(judge, stack.embedder,
                                                 loaded.records[i].triplet, selection);
        for (const judge::Exchange& exchange : recorder.exchanges()) {
          entry.result.audit_keys.push_back(exchange.key);
        }
        entry.ok = true;
      } catch (const Error& e) {
        entry.error_kind = error_kind_name(e.kind());
        entry.error_message = e.what();
        if (!config.keep_going) stop.store(true);
      }
      entry.exchanges = recorder.exchanges();
    }
  };

  std::size_t n_threads = std::min<std::size_t>(config.parallelism, n);
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < n_threads; ++t) threads.emplace_back(worker);
  for (std::thread& t : threads) t.join();

  if (!config.keep_going) {
    for (const EvalEntry& entry : entries) {
      if (!entry.ok && !entry.error_message.empty()) {
        if (entry.error_kind == "config") throw ConfigError(entry.error_message);
        if (entry.error_kind == "data") throw DataError(entry.error_message);
        if (entry.error_kind == "judge") throw JudgeError(entry.error_message);
        throw InternalError(entry.error_message);
      }
    }
  }

  ensure_dir(config.out_dir);
  fs::path out(config.out_dir);

  // Results, one line per record, dataset order.
  int error_count = 0;
  {
    std::ofstream results_file(out / "results.jsonl", std::ios::binary);
    if (!results_file) throw DataError("cannot write results.jsonl");
    for (std::size_t i = 0; i < n; ++i) {
      if (entries[i].ok) {
        results_file << metrics::triad_to_json(entries[i].result, selection).dump() << "\n";
      } else {
        ++error_count;
        json line = {{"id", loaded.records[i].triplet.id},
                     {"error", {{"kind", entries[i].error_kind},
                                {"message", entries[i].error_message}}}};
        results_file << line.dump() << "\n";
      }
    }
  }

  std::vector<std::pair<std::string, std::vector<judge::Exchange>>> audit;
  for (std::size_t i = 0; i < n; ++i) {
    audit.push_back({loaded.records[i].triplet.id, entries[i].exchanges});
  }
  write_audit_log((out / "audit.jsonl").string(), audit);

  std::vector<metrics::TriadResult> results;
  for (const EvalEntry& entry : entries) {
    if (entry.ok) results.push_back(entry.result);
  }
  json summary = {{"schema_version", 1},
                  {"dataset", config.dataset_path},
                  {"dataset_schema", dataset::to_string(config.schema)},
                  {"seed", config.require_seed()},
                  {"records", n},
                  {"errors", error_count},
                  {"metrics", config.metrics},
                  {"prompt_set_sha256", stack.prompts.content_hash()}};
  if (!results.empty()) {
    summary["groups"] = summary_json(metrics::aggregate_by_model(results));
  } else {
    summary["groups"] = json::object();
  }
  write_text_file((out / "summary.json").string(), summary.dump(2) + "\n");
  std::string md = "# Triad evaluation summary\n\n";
  if (!results.empty()) {
    md += summary_markdown(metrics::aggregate_by_model(results));
  } else {
    md += "(no successful records)\n";
  }
  write_text_file((out / "summary.md").string(), md);
  write_run_meta(config.out_dir, "evaluate",
                 {{"dataset", config.dataset_path}, {"records", n}});

  std::cout << "evaluated " << n << " records (" << error_count
            << " errors); results in " << config.out_dir << "\n";
  return kExitOk;
}

}  // namespace astrid::cli
