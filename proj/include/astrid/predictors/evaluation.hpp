#pragma once

#include <vector>

#include "astrid/predictors/model.hpp"
#include "astrid/stats.hpp"

namespace astrid::predictors {

// Per-model per-class scores on the held-out test rows, plus the Average
// row (arithmetic mean of the model rows, per class).
struct AxisReport {
  Axis axis = Axis::Harmfulness;
  std::vector<std::string> classes;

  struct Row {
    ModelKind kind;
    stats::ClassificationReport report;
  };
  std::vector<Row> rows;
  std::vector<double> average_f1;
};

AxisReport evaluate_axis(Axis axis, const std::vector<TrainedModel>& models,
                         const Matrix& test_x, const std::vector<int>& test_y);

}  // namespace astrid::predictors
