#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "astrid/cli.hpp"
#include "astrid/error.hpp"
#include "astrid/util.hpp"
#include "reports.hpp"

namespace astrid::cli {

namespace fs = std::filesystem;
using nlohmann::json;

// Consolidates one or more results.jsonl files into a single summary, with
// stable ordering (inputs sorted, groups sorted by model name).
int cmd_report(const std::vector<std::string>& results_paths, const std::string& out_dir) {
  if (results_paths.empty()) throw ConfigError("report needs at least one results file");
  if (out_dir.empty()) throw ConfigError("report needs an output directory (--out)");

  std::vector<std::string> sorted_paths(results_paths);
  std::sort(sorted_paths.begin(), sorted_paths.end());

  std::vector<metrics::TriadResult> all;
  json per_file = json::object();
  for (const std::string& path : sorted_paths) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open results file: " + path);
    std::vector<metrics::TriadResult> file_results;
    std::string line;
    int lineno = 0;
    int errors = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (util::trim(line).empty()) continue;
      json j;
      try {
        j = json::parse(line);
      } catch (const json::exception& e) {
        throw DataError(path + ":" + std::to_string(lineno) + ": " + e.what());
      }
      if (j.contains("error")) {
        ++errors;
        continue;
      }
      file_results.push_back(metrics::triad_from_json(j));
    }
    if (!file_results.empty()) {
      per_file[path] = {{"records", file_results.size()},
                        {"errors", errors},
                        {"groups", summary_json(metrics::aggregate_by_model(file_results))}};
    } else {
      per_file[path] = {{"records", 0}, {"errors", errors}, {"groups", json::object()}};
    }
    all.insert(all.end(), file_results.begin(), file_results.end());
  }

  ensure_dir(out_dir);
  fs::path out(out_dir);
  json consolidated = {{"schema_version", 1}, {"inputs", sorted_paths}, {"files", per_file}};
  if (!all.empty()) {
    consolidated["overall"] = summary_json(metrics::aggregate_by_model(all));
  }
  write_text_file((out / "report.json").string(), consolidated.dump(2) + "\n");

  std::string md = "# Consolidated triad report\n\n";
  for (const std::string& path : sorted_paths) {
    md += "- input: " + path + "\n";
  }
  md += "\n";
  if (!all.empty()) {
    md += summary_markdown(metrics::aggregate_by_model(all));
  } else {
    md += "(no successful records in inputs)\n";
  }
  write_text_file((out / "report.md").string(), md);
  write_run_meta(out_dir, "report", {{"inputs", sorted_paths}});

  std::cout << "consolidated " << all.size() << " records from " << sorted_paths.size()
            << " file(s) into " << out_dir << "\n";
  return kExitOk;
}

}  // namespace astrid::cli
