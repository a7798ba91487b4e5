#pragma once

#include <string>
#include <vector>

#include "astrid/predictors/model.hpp"
#include "astrid/stats.hpp"

namespace astrid::predictors {

struct GridAxisSpec {
  std::string name;
  std::vector<HyperValue> values;
};

using Grid = std::vector<GridAxisSpec>;

// Cartesian product in row-major order: the first axis varies slowest.
// Grid order defines the tie-break ("first in grid wins").
std::vector<HyperParams> enumerate_grid(const Grid& grid);

struct GridCell {
  HyperParams params;
  double val_macro_f1 = 0.0;
};

struct GridSearchResult {
  HyperParams best;
  double best_score = 0.0;
  std::vector<GridCell> table;  // full score table, enumeration order
};

// Exhaustive search; best = highest validation macro-F1, ties broken by
// enumeration order.
GridSearchResult grid_search(ModelKind kind, const Grid& grid, const Matrix& train_x,
                             const std::vector<int>& train_y, const Matrix& val_x,
                             const std::vector<int>& val_y,
                             const std::vector<std::string>& classes, std::uint64_t seed);

// Default grids. They include the hyperparameter configurations reported
// for this task family (e.g. RF n_estimators 100/200 with unlimited depth,
// SVM C=10 with gamma 0.1/1).
Grid default_grid(ModelKind kind);

}  // namespace astrid::predictors
