#include "astrid/predictors/svm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "astrid/error.hpp"
#include "astrid/util.hpp"

namespace astrid::predictors {

namespace {

double rbf_kernel(const std::vector<double>& a, const std::vector<double>& b, double gamma) {
  double dist = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    dist += d * d;
  }
  return std::exp(-gamma * dist);
}

}  // namespace

// Platt-style SMO over the full kernel matrix; the problem sizes here are
// small (tens to low hundreds of rows), so errors are kept in a cache and
// refreshed incrementally.
class SmoSolver {
 public:
  SmoSolver(const Matrix& X, const std::vector<int>& y, const SvmParams& params,
            std::uint64_t seed)
      : x_(X), y_(y), params_(params), rng_(util::seeded_rng(seed)) {
    const std::size_t n = X.size();
    alphas_.assign(n, 0.0);
    errors_.assign(n, 0.0);
    kernel_.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        kernel_[i][j] = kernel_[j][i] = rbf_kernel(X[i], X[j], params.gamma);
      }
    }
    for (std::size_t i = 0; i < n; ++i) errors_[i] = -static_cast<double>(y_[i]);
  }

  void solve() {
    const std::size_t n = x_.size();
    int num_changed = 0;
    bool examine_all = true;
    int pass_budget = std::max(1000, static_cast<int>(n) * params_.max_passes);
    while (num_changed > 0 || examine_all) {
      if (--pass_budget < 0) break;
      num_changed = 0;
      if (examine_all) {
        for (std::size_t i = 0; i < n; ++i) num_changed += examine(i);
      } else {
        for (std::size_t i = 0; i < n; ++i) {
          if (alphas_[i] > 0.0 && alphas_[i] < params_.C) num_changed += examine(i);
        }
      }
      if (examine_all) {
        examine_all = false;
      } else if (num_changed == 0) {
        examine_all = true;
      }
    }
    double violation = max_kkt_violation();
    if (violation > params_.kkt_tol) {
      char buf[160];
      std::snprintf(buf, sizeof(buf),
                    "svm: SMO did not converge: achieved KKT violation %.3e > tolerance %.3e",
                    violation, params_.kkt_tol);
      throw DataError(buf);
    }
  }

  std::vector<double> take_alphas() { return std::move(alphas_); }
  double bias() const { return bias_; }

  double max_kkt_violation() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < x_.size(); ++i) {
      double yf = y_[i] * decision(i);
      double v = 0.0;
      if (alphas_[i] <= 0.0) {
        v = std::max(0.0, 1.0 - yf);
      } else if (alphas_[i] >= params_.C) {
        v = std::max(0.0, yf - 1.0);
      } else {
        v = std::fabs(yf - 1.0);
      }
      worst = std::max(worst, v);
    }
    return worst;
  }

 private:
  double decision(std::size_t i) const { return errors_[i] + y_[i]; }

  int examine(std::size_t i2) {
    double y2 = y_[i2];
    double alph2 = alphas_[i2];
    double e2 = errors_[i2];
    double r2 = e2 * y2;
    bool violates = (r2 < -params_.kkt_tol && alph2 < params_.C) ||
                    (r2 > params_.kkt_tol && alph2 > 0.0);
    if (!violates) return 0;

    // Second-choice heuristic: largest |E1 - E2| over non-bound points.
    std::vector<std::size_t> non_bound;
    for (std::size_t i = 0; i < alphas_.size(); ++i) {
      if (alphas_[i] > 0.0 && alphas_[i] < params_.C) non_bound.push_back(i);
    }
    if (!non_bound.empty()) {
      std::size_t best = non_bound[0];
      double best_gap = -1.0;
      for (std::size_t i : non_bound) {
        double gap = std::fabs(errors_[i] - e2);
        if (gap > best_gap) {
          best_gap = gap;
          best = i;
        }
      }
      if (take_step(best, i2)) return 1;
    }
    std::size_t start = static_cast<std::size_t>(util::bounded(rng_, alphas_.size()));
    for (std::size_t k = 0; k < non_bound.size(); ++k) {
      std::size_t i = non_bound[(k + start) % non_bound.size()];
      if (take_step(i, i2)) return 1;
    }
    for (std::size_t k = 0; k < alphas_.size(); ++k) {
      std::size_t i = (k + start) % alphas_.size();
      if (take_step(i, i2)) return 1;
    }
    return 0;
  }

  bool take_step(std::size_t i1, std::size_t i2) {
    if (i1 == i2) return false;
    double alph1 = alphas_[i1], alph2 = alphas_[i2];
    double y1 = y_[i1], y2 = y_[i2];
    double e1 = errors_[i1], e2 = errors_[i2];
    double s = y1 * y2;

    double low, high;
    if (y1 != y2) {
      low = std::max(0.0, alph2 - alph1);
      high = std::min(params_.C, params_.C + alph2 - alph1);
    } else {
      low = std::max(0.0, alph1 + alph2 - params_.C);
      high = std::min(params_.C, alph1 + alph2);
    }
    if (low >= high) return false;

    double k11 = kernel_[i1][i1], k12 = kernel_[i1][i2], k22 = kernel_[i2][i2];
    double eta = k11 + k22 - 2.0 * k12;
    double a2;
    if (eta > 0.0) {
      a2 = alph2 + y2 * (e1 - e2) / eta;
      a2 = std::clamp(a2, low, high);
    } else {
      // Objective at the segment ends (Platt's f1/f2 formulation).
      double f1 = y1 * (e1 + bias_) - alph1 * k11 - s * alph2 * k12;
      double f2 = y2 * (e2 + bias_) - s * alph1 * k12 - alph2 * k22;
      double l1 = alph1 + s * (alph2 - low);
      double h1 = alph1 + s * (alph2 - high);
      double obj_low = l1 * f1 + low * f2 + 0.5 * l1 * l1 * k11 +
                       0.5 * low * low * k22 + s * low * l1 * k12;
      double obj_high = h1 * f1 + high * f2 + 0.5 * h1 * h1 * k11 +
                        0.5 * high * high * k22 + s * high * h1 * k12;
      if (obj_low < obj_high - kEps) {
        a2 = low;
      } else if (obj_low > obj_high + kEps) {
        a2 = high;
      } else {
        return false;
      }
    }
    if (std::fabs(a2 - alph2) < kEps * (a2 + alph2 + kEps)) return false;

    double a1 = alph1 + s * (alph2 - a2);
    // Snap pure numeric noise to the box bounds; anything larger would
    // perturb the sum(alpha*y)=0 equality.
    if (a1 < 1e-12) a1 = 0.0;
    if (a1 > params_.C - 1e-12) a1 = params_.C;
    if (a2 < 1e-12) a2 = 0.0;
    if (a2 > params_.C - 1e-12) a2 = params_.C;

    // Threshold update keeps KKT satisfied at the two updated points.
    double b1 = e1 + y1 * (a1 - alph1) * k11 + y2 * (a2 - alph2) * k12 + bias_;
    double b2 = e2 + y1 * (a1 - alph1) * k12 + y2 * (a2 - alph2) * k22 + bias_;
    double new_bias;
    if (a1 > 0.0 && a1 < params_.C) {
      new_bias = b1;
    } else if (a2 > 0.0 && a2 < params_.C) {
      new_bias = b2;
    } else {
      new_bias = (b1 + b2) / 2.0;
    }

    double delta1 = y1 * (a1 - alph1);
    double delta2 = y2 * (a2 - alph2);
    for (std::size_t i = 0; i < errors_.size(); ++i) {
      errors_[i] += delta1 * kernel_[i1][i] + delta2 * kernel_[i2][i] -
                    (new_bias - bias_);
    }
    bias_ = new_bias;
    alphas_[i1] = a1;
    alphas_[i2] = a2;
    errors_[i1] = decision_from_scratch(i1) - y1;
    errors_[i2] = decision_from_scratch(i2) - y2;
    return true;
  }

  double decision_from_scratch(std::size_t i) const {
    double sum = -bias_;
    for (std::size_t j = 0; j < alphas_.size(); ++j) {
      if (alphas_[j] > 0.0) sum += alphas_[j] * y_[j] * kernel_[j][i];
    }
    return sum;
  }

  static constexpr double kEps = 1e-12;

  const Matrix& x_;
  const std::vector<int>& y_;
  SvmParams params_;
  std::mt19937_64 rng_;
  std::vector<double> alphas_;
  std::vector<double> errors_;  // f(x_i) - y_i
  Matrix kernel_;
  double bias_ = 0.0;
};

void BinarySvm::fit(const Matrix& X, const std::vector<int>& y, const SvmParams& params,
                    std::uint64_t seed) {
  if (X.empty() || X.size() != y.size()) {
    throw DataError("svm: empty or mismatched training data");
  }
  for (int label : y) {
    if (label != 1 && label != -1) throw DataError("svm: labels must be +/-1");
  }
  gamma_ = params.gamma;
  c_ = params.C;
  train_x_ = X;
  train_y_ = y;

  SmoSolver solver(X, y, params, seed);
  solver.solve();
  alphas_ = solver.take_alphas();
  bias_ = solver.bias();

  support_vectors_.clear();
  coefs_.clear();
  labels_.clear();
  for (std::size_t i = 0; i < alphas_.size(); ++i) {
    if (alphas_[i] > 0.0) {
      support_vectors_.push_back(X[i]);
      coefs_.push_back(alphas_[i] * y[i]);
      labels_.push_back(y[i]);
    }
  }
}

double BinarySvm::decision_value(const std::vector<double>& x) const {
  double sum = -bias_;
  for (std::size_t i = 0; i < support_vectors_.size(); ++i) {
    sum += coefs_[i] * rbf_kernel(support_vectors_[i], x, gamma_);
  }
  return sum;
}

int BinarySvm::predict(const std::vector<double>& x) const {
  return decision_value(x) >= 0.0 ? 1 : -1;
}

double BinarySvm::kkt_violation() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < train_x_.size(); ++i) {
    double yf = train_y_[i] * decision_value(train_x_[i]);
    double v;
    if (alphas_[i] <= 0.0) {
      v = std::max(0.0, 1.0 - yf);
    } else if (alphas_[i] >= c_) {
      v = std::max(0.0, yf - 1.0);
    } else {
      v = std::fabs(yf - 1.0);
    }
    worst = std::max(worst, v);
  }
  return worst;
}

double BinarySvm::equality_gap() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < alphas_.size(); ++i) {
    sum += alphas_[i] * train_y_[i];
  }
  return std::fabs(sum);
}

nlohmann::json BinarySvm::to_json() const {
  return {{"support_vectors", support_vectors_},
          {"coefs", coefs_},
          {"bias", bias_},
          {"gamma", gamma_},
          {"C", c_}};
}

BinarySvm BinarySvm::from_json(const nlohmann::json& j) {
  BinarySvm svm;
  svm.support_vectors_ = j.at("support_vectors").get<Matrix>();
  svm.coefs_ = j.at("coefs").get<std::vector<double>>();
  svm.bias_ = j.at("bias").get<double>();
  svm.gamma_ = j.at("gamma").get<double>();
  svm.c_ = j.at("C").get<double>();
  return svm;
}

std::vector<double> SvmRbf::standardize(const std::vector<double>& x) const {
  std::vector<double> out(x.size());
  for (std::size_t f = 0; f < x.size(); ++f) {
    out[f] = (x[f] - feature_means_[f]) / feature_scales_[f];
  }
  return out;
}

void SvmRbf::fit(const Matrix& X, const std::vector<int>& y, int n_classes,
                 const SvmParams& params, std::uint64_t seed) {
  if (X.empty() || X.size() != y.size()) {
    throw DataError("svm: empty or mismatched training data");
  }
  n_classes_ = n_classes;
  const std::size_t n_features = X[0].size();

  feature_means_.assign(n_features, 0.0);
  feature_scales_.assign(n_features, 1.0);
  for (std::size_t f = 0; f < n_features; ++f) {
    double mean = 0.0;
    for (const auto& row : X) mean += row[f];
    mean /= static_cast<double>(X.size());
    double var = 0.0;
    for (const auto& row : X) var += (row[f] - mean) * (row[f] - mean);
    var /= static_cast<double>(X.size());
    feature_means_[f] = mean;
    feature_scales_[f] = var > 0.0 ? std::sqrt(var) : 1.0;
  }

  Matrix scaled;
  scaled.reserve(X.size());
  for (const auto& row : X) scaled.push_back(standardize(row));

  pairs_.clear();
  models_.clear();
  for (int a = 0; a < n_classes; ++a) {
    for (int b = a + 1; b < n_classes; ++b) {
      Matrix pair_x;
      std::vector<int> pair_y;
      for (std::size_t i = 0; i < scaled.size(); ++i) {
        if (y[i] == a) {
          pair_x.push_back(scaled[i]);
          pair_y.push_back(1);
        } else if (y[i] == b) {
          pair_x.push_back(scaled[i]);
          pair_y.push_back(-1);
        }
      }
      if (pair_x.empty()) continue;
      bool single_class =
          std::all_of(pair_y.begin(), pair_y.end(), [&](int v) { return v == pair_y[0]; });
      if (single_class) continue;  // vote cannot be informed; skip the pair
      BinarySvm model;
      model.fit(pair_x, pair_y, params,
                seed + static_cast<std::uint64_t>(a) * 1000 + static_cast<std::uint64_t>(b));
      pairs_.push_back({a, b});
      models_.push_back(std::move(model));
    }
  }
  if (models_.empty() && n_classes > 1) {
    // Degenerate: all rows share one label. Predict falls back to votes
    // which are all zero -> lowest class index; steer it to the seen class.
    for (int c = 0; c < n_classes; ++c) {
      if (std::find(y.begin(), y.end(), c) != y.end()) {
        fallback_class_ = c;
        break;
      }
    }
  }
}

int SvmRbf::predict(const std::vector<double>& x) const {
  if (models_.empty()) return fallback_class_;
  std::vector<int> votes(n_classes_, 0);
  std::vector<double> scaled = standardize(x);
  for (std::size_t m = 0; m < models_.size(); ++m) {
    int winner = models_[m].predict(scaled) > 0 ? pairs_[m].first : pairs_[m].second;
    votes[winner] += 1;
  }
  int best = 0;
  for (int c = 1; c < n_classes_; ++c) {
    if (votes[c] > votes[best]) best = c;
  }
  return best;
}

nlohmann::json SvmRbf::params_to_json() const {
  nlohmann::json pair_list = nlohmann::json::array();
  nlohmann::json model_list = nlohmann::json::array();
  for (std::size_t m = 0; m < models_.size(); ++m) {
    pair_list.push_back({pairs_[m].first, pairs_[m].second});
    model_list.push_back(models_[m].to_json());
  }
  return {{"n_classes", n_classes_},
          {"feature_means", feature_means_},
          {"feature_scales", feature_scales_},
          {"pairs", pair_list},
          {"models", model_list},
          {"fallback_class", fallback_class_}};
}

SvmRbf SvmRbf::from_json(const nlohmann::json& j) {
  SvmRbf svm;
  svm.n_classes_ = j.at("n_classes").get<int>();
  svm.feature_means_ = j.at("feature_means").get<std::vector<double>>();
  svm.feature_scales_ = j.at("feature_scales").get<std::vector<double>>();
  for (const auto& p : j.at("pairs")) {
    svm.pairs_.push_back({p.at(0).get<int>(), p.at(1).get<int>()});
  }
  for (const auto& m : j.at("models")) {
    svm.models_.push_back(BinarySvm::from_json(m));
  }
  svm.fallback_class_ = j.value("fallback_class", 0);
  return svm;
}

}  // namespace astrid::predictors
