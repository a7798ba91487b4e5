#include <filesystem>
#include <iostream>

#include "astrid/cli.hpp"
#include "astrid/error.hpp"
#include "astrid/stats.hpp"
#include "astrid/util.hpp"
#include "reports.hpp"

namespace astrid::cli {

namespace fs = std::filesystem;
using nlohmann::json;

// ROC + correlation validation of a faithfulness metric against human
// perceived faithfulness. Uses human ratings only.
int cmd_validate(const RunConfig& config, const std::string& metric) {
  if (config.dataset_path.empty()) throw ConfigError("no dataset given (--dataset)");
  if (config.out_dir.empty()) throw ConfigError("validate needs an output directory (--out)");
  std::string name = util::to_lower(metric);
  if (name != "cf" && name != "rf") {
    throw ConfigError("validate --metric must be cf or rf, got '" + metric + "'");
  }

  dataset::DatasetSchema schema =
      config.schema_set ? config.schema : dataset::DatasetSchema::Faithfulness;
  dataset::LoadResult loaded =
      dataset::load_dataset(config.dataset_path, schema, config.strict);
  for (const std::string& warning : loaded.warnings) {
    std::cerr << "warning: " << warning << "\n";
  }

  std::vector<double> scores;
  std::vector<bool> labels;
  int skipped = 0;
  for (const dataset::Record& record : loaded.records) {
    if (!record.human_ratings || !record.human_ratings->perceived_faithfulness) {
      ++skipped;
      continue;
    }
    const auto& ratings = *record.human_ratings;
    std::optional<double> value = name == "cf" ? ratings.cf_human : ratings.rf_human;
    if (!value) {
      ++skipped;
      continue;
    }
    scores.push_back(*value);
    labels.push_back(*ratings.perceived_faithfulness);
  }
  if (scores.size() < 2) {
    throw DataError("validate: fewer than 2 usable records carry perceived_faithfulness "
                    "and " + name + "_human (skipped " + std::to_string(skipped) + ")");
  }

  std::vector<double> label_values;
  label_values.reserve(labels.size());
  for (bool label : labels) label_values.push_back(label ? 1.0 : 0.0);

  stats::RocCurve curve;
  double pearson_r, spearman_rho, kendall_tau;
  try {
    curve = stats::roc(scores, labels);
    stats::PairedSeries series(scores, label_values);
    pearson_r = stats::pearson(series);
    spearman_rho = stats::spearman(series);
    kendall_tau = stats::kendall_tau_b(series);
  } catch (const Error& e) {
    throw DataError("validate over " + std::to_string(scores.size()) + " records (metric " +
                    name + " vs pf): " + e.what());
  }

  ensure_dir(config.out_dir);
  fs::path out(config.out_dir);
  write_text_file((out / ("roc_" + name + ".csv")).string(), roc_csv(curve));
  json summary = {{"schema_version", 1},
                  {"dataset", config.dataset_path},
                  {"metric", name},
                  {"target", "pf"},
                  {"n", scores.size()},
                  {"skipped", skipped},
                  {"auc", curve.auc},
                  {"pearson", pearson_r},
                  {"spearman", spearman_rho},
                  {"kendall_tau_b", kendall_tau}};
  write_text_file((out / ("validation_" + name + ".json")).string(), summary.dump(2) + "\n");
  write_text_file((out / ("validation_" + name + ".md")).string(),
                  "# Metric validation against perceived faithfulness\n\n" +
                      correlations_markdown(name, pearson_r, spearman_rho, kendall_tau,
                                            curve.auc));
  write_run_meta(config.out_dir, "validate",
                 {{"dataset", config.dataset_path}, {"metric", name}});

  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "%s vs PF over %zu records: AUC %.4f, pearson %.4f, spearman %.4f, "
                "kendall %.4f\n",
                name.c_str(), scores.size(), curve.auc, pearson_r, spearman_rho,
                kendall_tau);
  std::cout << buf;
  return kExitOk;
}

}  // namespace astrid::cli
