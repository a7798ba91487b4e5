#include "astrid/predictors/gaussian_nb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "astrid/error.hpp"

namespace astrid::predictors {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kVarianceFloorScale = 1e-9;

}  // namespace

void GaussianNb::fit(const Matrix& X, const std::vector<int>& y, int n_classes) {
  if (X.empty() || X.size() != y.size()) {
    throw DataError("gaussian_nb: empty or mismatched training data");
  }
  const std::size_t n_features = X[0].size();
  const std::size_t n = X.size();

  // Floor derives from the largest per-feature variance over all samples.
  double max_var = 0.0;
  for (std::size_t f = 0; f < n_features; ++f) {
    double mean = 0.0;
    for (const auto& row : X) mean += row[f];
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (const auto& row : X) var += (row[f] - mean) * (row[f] - mean);
    var /= static_cast<double>(n);
    max_var = std::max(max_var, var);
  }
  const double floor = std::max(kVarianceFloorScale * max_var, 1e-300);

  priors_.assign(n_classes, 0.0);
  means_.assign(n_classes, std::vector<double>(n_features, 0.0));
  variances_.assign(n_classes, std::vector<double>(n_features, 0.0));

  std::vector<std::size_t> counts(n_classes, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (y[i] < 0 || y[i] >= n_classes) throw DataError("gaussian_nb: label out of range");
    counts[y[i]] += 1;
    for (std::size_t f = 0; f < n_features; ++f) means_[y[i]][f] += X[i][f];
  }
  for (int c = 0; c < n_classes; ++c) {
    if (counts[c] == 0) continue;
    for (std::size_t f = 0; f < n_features; ++f) {
      means_[c][f] /= static_cast<double>(counts[c]);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t f = 0; f < n_features; ++f) {
      double d = X[i][f] - means_[y[i]][f];
      variances_[y[i]][f] += d * d;
    }
  }
  for (int c = 0; c < n_classes; ++c) {
    priors_[c] = static_cast<double>(counts[c]) / static_cast<double>(n);
    for (std::size_t f = 0; f < n_features; ++f) {
      if (counts[c] > 0) variances_[c][f] /= static_cast<double>(counts[c]);
      variances_[c][f] = std::max(variances_[c][f], floor);
    }
  }
}

std::vector<double> GaussianNb::log_joint(const std::vector<double>& x) const {
  std::vector<double> out(priors_.size(), -std::numeric_limits<double>::infinity());
  for (std::size_t c = 0; c < priors_.size(); ++c) {
    if (priors_[c] == 0.0) continue;
    double lp = std::log(priors_[c]);
    for (std::size_t f = 0; f < x.size(); ++f) {
      double var = variances_[c][f];
      double d = x[f] - means_[c][f];
      lp += -0.5 * std::log(2.0 * kPi * var) - d * d / (2.0 * var);
    }
    out[c] = lp;
  }
  return out;
}

int GaussianNb::predict(const std::vector<double>& x) const {
  std::vector<double> lp = log_joint(x);
  int best = 0;
  for (std::size_t c = 1; c < lp.size(); ++c) {
    if (lp[c] > lp[best]) best = static_cast<int>(c);
  }
  return best;
}

std::vector<double> GaussianNb::predict_proba(const std::vector<double>& x) const {
  std::vector<double> lp = log_joint(x);
  double max_lp = *std::max_element(lp.begin(), lp.end());
  double total = 0.0;
  std::vector<double> probs(lp.size(), 0.0);
  for (std::size_t c = 0; c < lp.size(); ++c) {
    probs[c] = std::isfinite(lp[c]) ? std::exp(lp[c] - max_lp) : 0.0;
    total += probs[c];
  }
  for (double& p : probs) p /= total;
  return probs;
}

nlohmann::json GaussianNb::params_to_json() const {
  return {{"priors", priors_}, {"means", means_}, {"variances", variances_}};
}

GaussianNb GaussianNb::from_json(const nlohmann::json& j) {
  GaussianNb nb;
  nb.priors_ = j.at("priors").get<std::vector<double>>();
  nb.means_ = j.at("means").get<Matrix>();
  nb.variances_ = j.at("variances").get<Matrix>();
  return nb;
}

}  // namespace astrid::predictors
