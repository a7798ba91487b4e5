#include "astrid/predictors/evaluation.hpp"

#include "astrid/error.hpp"

namespace astrid::predictors {

AxisReport evaluate_axis(Axis axis, const std::vector<TrainedModel>& models,
                         const Matrix& test_x, const std::vector<int>& test_y) {
  if (models.empty()) throw DataError("evaluate_axis: no models given");
  if (test_x.empty() || test_x.size() != test_y.size()) {
    throw DataError("evaluate_axis: empty or mismatched test data");
  }

  AxisReport report;
  report.axis = axis;
  report.classes = axis_classes(axis);

  std::vector<std::string> actual;
  actual.reserve(test_y.size());
  for (int label : test_y) actual.push_back(report.classes.at(label));

  report.average_f1.assign(report.classes.size(), 0.0);
  for (const TrainedModel& model : models) {
    std::vector<std::string> predicted = model.predict(test_x);
    AxisReport::Row row{model.kind,
                        stats::classification_report(predicted, actual, report.classes)};
    for (std::size_t c = 0; c < report.classes.size(); ++c) {
      report.average_f1[c] += row.report.per_class[c].f1;
    }
    report.rows.push_back(std::move(row));
  }
  for (double& f1 : report.average_f1) f1 /= static_cast<double>(models.size());
  return report;
}

}  // namespace astrid::predictors
