#include "astrid/predictors/grid_search.hpp"

#include "astrid/error.hpp"

namespace astrid::predictors {

std::vector<HyperParams> enumerate_grid(const Grid& grid) {
  std::vector<HyperParams> result;
  result.push_back(HyperParams{});
  for (const GridAxisSpec& axis : grid) {
    if (axis.values.empty()) {
      throw ConfigError("grid axis '" + axis.name + "' has no values");
    }
    std::vector<HyperParams> expanded;
    expanded.reserve(result.size() * axis.values.size());
    for (const HyperParams& base : result) {
      for (const HyperValue& value : axis.values) {
        HyperParams next = base;
        next.values.push_back({axis.name, value});
        expanded.push_back(std::move(next));
      }
    }
    result = std::move(expanded);
  }
  return result;
}

GridSearchResult grid_search(ModelKind kind, const Grid& grid, const Matrix& train_x,
                             const std::vector<int>& train_y, const Matrix& val_x,
                             const std::vector<int>& val_y,
                             const std::vector<std::string>& classes,
                             std::uint64_t seed) {
  if (val_x.empty() || val_x.size() != val_y.size()) {
    throw DataError("grid_search: empty or mismatched validation data");
  }
  std::vector<std::string> val_actual;
  val_actual.reserve(val_y.size());
  for (int label : val_y) val_actual.push_back(classes.at(label));

  GridSearchResult result;
  bool have_best = false;
  for (const HyperParams& params : enumerate_grid(grid)) {
    TrainedModel model = train_model(kind, train_x, train_y, classes, params, seed);
    std::vector<std::string> predicted = model.predict(val_x);
    double score =
        stats::classification_report(predicted, val_actual, classes).macro_f1;
    result.table.push_back({params, score});
    if (!have_best || score > result.best_score) {
      have_best = true;
      result.best = params;
      result.best_score = score;
    }
  }
  return result;
}

Grid default_grid(ModelKind kind) {
  switch (kind) {
    case ModelKind::RandomForest:
      return {
          {"n_estimators", {std::int64_t{100}, std::int64_t{200}}},
          {"max_depth", {std::monostate{}, std::int64_t{5}, std::int64_t{10}}},
          {"min_samples_split", {std::int64_t{2}, std::int64_t{5}}},
          {"min_samples_leaf", {std::int64_t{1}, std::int64_t{2}}},
          {"bootstrap", {true, false}},
      };
    case ModelKind::SvmRbf:
      return {
          {"C", {0.1, 1.0, 10.0}},
          {"gamma", {0.01, 0.1, 1.0}},
      };
    case ModelKind::GaussianNb:
      return {};
    case ModelKind::NeuralNet:
      return {};
  }
  return {};
}

}  // namespace astrid::predictors
