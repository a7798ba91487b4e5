#pragma once

#include <cstdint>
#include <vector>

#include "json.hpp"

#include "astrid/predictors/features.hpp"

namespace astrid::predictors {

struct SvmParams {
  double C = 10.0;
  double gamma = 0.1;
  double kkt_tol = 1e-3;
  int max_passes = 200;  // full passes without progress before giving up
};

// Soft-margin binary SVM with an RBF kernel, solved in the dual by
// sequential minimal optimization. Labels are +/-1. Inputs are expected
// pre-standardized by the multi-class wrapper.
class BinarySvm {
 public:
  void fit(const Matrix& X, const std::vector<int>& y, const SvmParams& params,
           std::uint64_t seed);

  double decision_value(const std::vector<double>& x) const;
  int predict(const std::vector<double>& x) const;  // +1 / -1

  const std::vector<double>& alphas() const { return alphas_; }
  double bias() const { return bias_; }
  // max over i of the margin-based KKT violation at the stored solution
  double kkt_violation() const;
  // |sum alpha_i y_i|
  double equality_gap() const;

  nlohmann::json to_json() const;
  static BinarySvm from_json(const nlohmann::json& j);

 private:
  friend class SmoSolver;
  Matrix support_vectors_;
  std::vector<double> alphas_;      // training-order alphas (kept for checks)
  std::vector<int> labels_;
  std::vector<double> coefs_;       // alpha_i * y_i per support vector
  double bias_ = 0.0;
  double gamma_ = 0.1;
  double c_ = 1.0;
  Matrix train_x_;                  // retained for KKT reporting
  std::vector<int> train_y_;
};

// One-vs-one multi-class wrapper with internal feature standardization.
// Pair voting; ties resolve to the lowest class index.
class SvmRbf {
 public:
  void fit(const Matrix& X, const std::vector<int>& y, int n_classes,
           const SvmParams& params, std::uint64_t seed);
  int predict(const std::vector<double>& x) const;

  nlohmann::json params_to_json() const;
  static SvmRbf from_json(const nlohmann::json& j);

  const std::vector<BinarySvm>& pair_models() const { return models_; }

 private:
  std::vector<double> feature_means_;
  std::vector<double> feature_scales_;
  std::vector<std::pair<int, int>> pairs_;
  std::vector<BinarySvm> models_;
  int n_classes_ = 0;
  int fallback_class_ = 0;  // used when training saw a single class only

  std::vector<double> standardize(const std::vector<double>& x) const;
};

}  // namespace astrid::predictors
