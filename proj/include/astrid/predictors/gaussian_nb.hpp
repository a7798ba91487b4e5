#pragma once

#include <vector>

#include "json.hpp"

#include "astrid/predictors/features.hpp"

namespace astrid::predictors {

// Gaussian naive Bayes: empirical class priors, per-class per-feature
// mean/variance, prediction by argmax log-posterior with lowest-class-index
// tie-break. Variances are floored at 1e-9 times the largest feature
// variance over the whole training set.
class GaussianNb {
 public:
  void fit(const Matrix& X, const std::vector<int>& y, int n_classes);

  int predict(const std::vector<double>& x) const;
  // Normalized posterior P(class | x).
  std::vector<double> predict_proba(const std::vector<double>& x) const;
  std::vector<double> log_joint(const std::vector<double>& x) const;

  nlohmann::json params_to_json() const;
  static GaussianNb from_json(const nlohmann::json& j);

 private:
  std::vector<double> priors_;
  Matrix means_;      // [class][feature]
  Matrix variances_;  // [class][feature], floored
};

}  // namespace astrid::predictors
