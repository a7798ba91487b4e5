#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

#include "astrid/cli.hpp"
#include "astrid/error.hpp"
#include "astrid/predictors/evaluation.hpp"
#include "astrid/predictors/grid_search.hpp"
#include "astrid/util.hpp"
#include "reports.hpp"

namespace astrid::cli {

namespace fs = std::filesystem;
using namespace astrid::predictors;
using nlohmann::json;

namespace {

std::vector<std::string> read_test_ids(const std::string& path) {
  std::string content = read_text_file(path);
  std::string trimmed = util::trim(content);
  std::vector<std::string> ids;
  if (!trimmed.empty() && trimmed.front() == '[') {
    for (const auto& item : json::parse(trimmed)) ids.push_back(item.get<std::string>());
  } else {
    for (const std::string& line : util::split_lines(content)) {
      std::string id = util::trim(line);
      if (!id.empty()) ids.push_back(id);
    }
  }
  if (ids.empty()) throw DataError("test-ids file " + path + " contains no ids");
  return ids;
}

struct SplitSets {
  Matrix train_x, val_x, test_x;
  std::vector<int> train_y, val_y, test_y;
};

SplitSets project_split(const FeatureSet& features, const dataset::DatasetSplit& split) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < features.ids.size(); ++i) index[features.ids[i]] = i;
  auto fill = [&](const std::vector<std::string>& ids, Matrix& x, std::vector<int>& y) {
    for (const std::string& id : ids) {
      auto it = index.find(id);
      if (it == index.end()) {
        throw InternalError("split id " + id + " missing from feature rows");
      }
      x.push_back(features.rows[it->second]);
      y.push_back(features.labels[it->second]);
    }
  };
  SplitSets sets;
  fill(split.train, sets.train_x, sets.train_y);
  fill(split.val, sets.val_x, sets.val_y);
  fill(split.test, sets.test_x, sets.test_y);
  return sets;
}

// The SVM grid is skipped for helpfulness: it trains at the best
// hyperparameters found for harmfulness (C=10, gamma=0.1).
HyperParams helpfulness_svm_params() {
  HyperParams params;
  params.set("C", 10.0);
  params.set("gamma", 0.1);
  return params;
}

}  // namespace

int cmd_train(const RunConfig& config, const std::string& axis_name,
              const std::string& test_ids_path) {
  if (config.dataset_path.empty()) throw ConfigError("no dataset given (--dataset)");
  if (config.out_dir.empty()) throw ConfigError("train needs an output directory (--out)");
  std::uint64_t seed = config.require_seed();
  Axis axis = axis_from_string(axis_name);

  dataset::DatasetSchema schema =
      config.schema_set ? config.schema : dataset::DatasetSchema::Clinical;
  dataset::LoadResult loaded =
      dataset::load_dataset(config.dataset_path, schema, config.strict);
  for (const std::string& warning : loaded.warnings) {
    std::cerr << "warning: " << warning << "\n";
  }
  if (loaded.records.empty()) throw ConfigError("dataset is empty: nothing to train on");

  FeatureSet features = build_features(loaded.records, axis);

  std::vector<std::string> explicit_test;
  if (!test_ids_path.empty()) explicit_test = read_test_ids(test_ids_path);
  dataset::DatasetSplit split = dataset::split_dataset(loaded.records, explicit_test, seed);
  std::string split_id;
  {
    std::string all;
    for (const auto& id : split.test) all += id + "\n";
    all += "|";
    for (const auto& id : split.val) all += id + "\n";
    split_id = util::sha256_hex(all).substr(0, 12);
  }

  SplitSets sets = project_split(features, split);

  // Every class must be represented in the training rows before any model
  // trains on them.
  std::set<int> train_classes(sets.train_y.begin(), sets.train_y.end());
  for (std::size_t c = 0; c < features.classes.size(); ++c) {
    if (train_classes.count(static_cast<int>(c)) == 0) {
      throw DataError("axis " + to_string(axis) + ": class '" + features.classes[c] +
                      "' is absent from the train split; cannot train");
    }
  }

  ensure_dir(config.out_dir);
  fs::path out(config.out_dir);
  write_text_file((out / "split.json").string(),
                  dataset::split_to_json(split).dump(2) + "\n");

  json grid_tables = json::object();
  std::vector<TrainedModel> models;
  for (ModelKind kind : kAllModelKinds) {
    HyperParams best;
    if (kind == ModelKind::SvmRbf && axis == Axis::Helpfulness) {
      best = helpfulness_svm_params();
      grid_tables[to_string(kind)] = {{"skipped", "helpfulness reuses the harmfulness "
                                                  "SVM hyperparameters"},
                                      {"params", best.to_json()}};
    } else {
      Grid grid = default_grid(kind);
      if (grid.empty()) {
        best = HyperParams{};
      } else {
        GridSearchResult search =
            grid_search(kind, grid, sets.train_x, sets.train_y, sets.val_x, sets.val_y,
                        features.classes, seed);
        best = search.best;
        json cells = json::array();
        for (const GridCell& cell : search.table) {
          cells.push_back({{"params", cell.params.to_json()},
                           {"val_macro_f1", cell.val_macro_f1}});
        }
        grid_tables[to_string(kind)] = {{"best", best.to_json()},
                                        {"best_val_macro_f1", search.best_score},
                                        {"cells", cells}};
      }
    }

    TrainedModel model =
        train_model(kind, sets.train_x, sets.train_y, features.classes, best, seed);
    model.split_id = split_id;
    save_model(model, (out / (to_string(kind) + ".json")).string());
    models.push_back(std::move(model));
  }

  AxisReport report = evaluate_axis(axis, models, sets.test_x, sets.test_y);
  json report_json = axis_report_json(report);
  report_json["split"] = {{"id", split_id},
                          {"seed", seed},
                          {"train", split.train.size()},
                          {"val", split.val.size()},
                          {"test", split.test.size()}};
  report_json["grid_search"] = grid_tables;
  if (!features.flagged_ids.empty()) {
    report_json["undefined_cf_encoded_ids"] = features.flagged_ids;
  }
  write_text_file((out / "report.json").string(), report_json.dump(2) + "\n");

  std::string md = "# Clinician-label prediction from the metric triad\n\n";
  md += "Axis: " + to_string(axis) + "\n\n";
  md += axis_report_markdown(report);
  if (!features.flagged_ids.empty()) {
    md += "\nRows with undefined CF encoded as 1.0: " +
          std::to_string(features.flagged_ids.size()) + "\n";
  }
  write_text_file((out / "report.md").string(), md);
  write_run_meta(config.out_dir, "train",
                 {{"dataset", config.dataset_path}, {"axis", to_string(axis)}});

  std::cout << "trained 4 models on axis " << to_string(axis) << " (split " << split_id
            << "); report in " << config.out_dir << "\n";
  return kExitOk;
}

}  // namespace astrid::cli
