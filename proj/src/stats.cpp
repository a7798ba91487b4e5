#include "astrid/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>

#include "astrid/error.hpp"

namespace astrid::stats {

namespace {

void require_finite(const std::vector<double>& v, const char* name) {
  for (double value : v) {
    if (!std::isfinite(value)) {
      throw DataError(std::string("series ") + name + " contains a non-finite value");
    }
  }
}

std::int64_t tie_pairs(std::vector<double> sorted) {
  std::int64_t pairs = 0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    std::int64_t t = static_cast<std::int64_t>(j - i);
    pairs += t * (t - 1) / 2;
    i = j;
  }
  return pairs;
}

// Strict inversions via merge sort; equal elements are not inversions.
std::int64_t count_inversions(std::vector<double>& v, std::vector<double>& scratch,
                              std::size_t lo, std::size_t hi) {
  if (hi - lo <= 1) return 0;
  std::size_t mid = lo + (hi - lo) / 2;
  std::int64_t count = count_inversions(v, scratch, lo, mid) +
                       count_inversions(v, scratch, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (v[i] <= v[j]) {
      scratch[k++] = v[i++];
    } else {
      count += static_cast<std::int64_t>(mid - i);
      scratch[k++] = v[j++];
    }
  }
  while (i < mid) scratch[k++] = v[i++];
  while (j < hi) scratch[k++] = v[j++];
  std::copy(scratch.begin() + lo, scratch.begin() + hi, v.begin() + lo);
  return count;
}

}  // namespace

PairedSeries::PairedSeries(std::vector<double> x_in, std::vector<double> y_in)
    : x(std::move(x_in)), y(std::move(y_in)) {
  if (x.size() != y.size()) {
    throw DataError("paired series length mismatch: " + std::to_string(x.size()) +
                    " vs " + std::to_string(y.size()));
  }
  if (x.size() < 2) throw DataError("paired series needs at least 2 points");
  require_finite(x, "x");
  require_finite(y, "y");
}

std::vector<double> average_ranks(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    double mean_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = mean_rank;
    i = j;
  }
  return ranks;
}

double pearson(const PairedSeries& series) {
  const std::size_t n = series.size();
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_x += series.x[i];
    mean_y += series.y[i];
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);

  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double dx = series.x[i] - mean_x;
    double dy = series.y[i] - mean_y;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw DataError("pearson: zero-variance input series");
  }
  return sxy / std::sqrt(sxx * syy);
}

double spearman(const PairedSeries& series) {
  return pearson(PairedSeries(average_ranks(series.x), average_ranks(series.y)));
}

double kendall_tau_b(const PairedSeries& series) {
  const std::size_t n = series.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (series.x[a] != series.x[b]) return series.x[a] < series.x[b];
    return series.y[a] < series.y[b];
  });

  const std::int64_t n0 = static_cast<std::int64_t>(n) * (static_cast<std::int64_t>(n) - 1) / 2;
  std::vector<double> x_sorted(n), y_by_x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x_sorted[i] = series.x[order[i]];
    y_by_x[i] = series.y[order[i]];
  }
  const std::int64_t n1 = tie_pairs(x_sorted);
  std::vector<double> y_sorted = series.y;
  std::sort(y_sorted.begin(), y_sorted.end());
  const std::int64_t n2 = tie_pairs(y_sorted);

  // Joint ties: runs of equal (x, y).
  std::int64_t n3 = 0;
  {
    std::size_t i = 0;
    while (i < n) {
      std::size_t j = i;
      while (j < n && x_sorted[j] == x_sorted[i] && y_by_x[j] == y_by_x[i]) ++j;
      std::int64_t t = static_cast<std::int64_t>(j - i);
      n3 += t * (t - 1) / 2;
      i = j;
    }
  }

  if (n0 == n1 || n0 == n2) {
    throw DataError("kendall_tau_b: zero-variance input series");
  }

  std::vector<double> scratch(n);
  const std::int64_t discordant = count_inversions(y_by_x, scratch, 0, n);
  const std::int64_t concordant = n0 - n1 - n2 + n3 - discordant;
  const double denom = std::sqrt(static_cast<double>(n0 - n1)) *
                       std::sqrt(static_cast<double>(n0 - n2));
  return static_cast<double>(concordant - discordant) / denom;
}

RocCurve roc(const std::vector<double>& scores, const std::vector<bool>& labels) {
  if (scores.size() != labels.size()) {
    throw DataError("roc: scores/labels length mismatch");
  }
  if (scores.size() < 2) throw DataError("roc: need at least 2 observations");
  require_finite(scores, "scores");

  std::int64_t positives = 0;
  for (bool label : labels) positives += label ? 1 : 0;
  const std::int64_t negatives = static_cast<std::int64_t>(labels.size()) - positives;
  if (positives == 0 || negatives == 0) {
    throw DataError("roc: both classes must be present");
  }

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  RocCurve curve;
  curve.points.push_back({0.0, 0.0, std::numeric_limits<double>::infinity()});
  std::int64_t tp = 0, fp = 0;
  std::int64_t prev_tp = 0, prev_fp = 0;
  std::int64_t auc_numerator = 0;  // sum of dFP * (TP_prev + TP_cur)
  std::size_t i = 0;
  while (i < order.size()) {
    double value = scores[order[i]];
    while (i < order.size() && scores[order[i]] == value) {
      if (labels[order[i]]) ++tp; else ++fp;
      ++i;
    }
    curve.points.push_back({static_cast<double>(fp) / static_cast<double>(negatives),
                            static_cast<double>(tp) / static_cast<double>(positives),
                            value});
    auc_numerator += (fp - prev_fp) * (tp + prev_tp);
    prev_tp = tp;
    prev_fp = fp;
  }
  curve.auc = static_cast<double>(auc_numerator) /
              (2.0 * static_cast<double>(positives) * static_cast<double>(negatives));
  return curve;
}

ClassificationReport classification_report(const std::vector<std::string>& predicted,
                                           const std::vector<std::string>& actual,
                                           const std::vector<std::string>& classes) {
  if (predicted.size() != actual.size()) {
    throw DataError("classification_report: predicted/actual length mismatch: " +
                    std::to_string(predicted.size()) + " vs " +
                    std::to_string(actual.size()));
  }
  if (classes.empty()) throw DataError("classification_report: empty class list");

  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < classes.size(); ++i) index[classes[i]] = i;
  auto lookup = [&](const std::string& label, const char* which) {
    auto it = index.find(label);
    if (it == index.end()) {
      throw DataError(std::string("classification_report: ") + which + " label '" +
                      label + "' not in class list");
    }
    return it->second;
  };

  std::vector<std::int64_t> tp(classes.size(), 0), fp(classes.size(), 0),
      fn(classes.size(), 0), support(classes.size(), 0);
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    std::size_t p = lookup(predicted[i], "predicted");
    std::size_t a = lookup(actual[i], "actual");
    support[a] += 1;
    if (p == a) {
      tp[p] += 1;
    } else {
      fp[p] += 1;
      fn[a] += 1;
    }
  }

  ClassificationReport report;
  report.classes = classes;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    ClassScore score;
    score.support = static_cast<int>(support[c]);
    score.absent = (tp[c] + fp[c] + fn[c] == 0);
    double denom_p = static_cast<double>(tp[c] + fp[c]);
    double denom_r = static_cast<double>(tp[c] + fn[c]);
    score.precision = denom_p > 0 ? static_cast<double>(tp[c]) / denom_p : 0.0;
    score.recall = denom_r > 0 ? static_cast<double>(tp[c]) / denom_r : 0.0;
    double pr = score.precision + score.recall;
    score.f1 = pr > 0 ? 2.0 * score.precision * score.recall / pr : 0.0;
    report.per_class.push_back(score);
    report.macro_precision += score.precision;
    report.macro_recall += score.recall;
    report.macro_f1 += score.f1;
  }
  report.macro_precision /= static_cast<double>(classes.size());
  report.macro_recall /= static_cast<double>(classes.size());
  report.macro_f1 /= static_cast<double>(classes.size());
  return report;
}

double percent_agreement(const std::vector<std::string>& rater_a,
                         const std::vector<std::string>& rater_b) {
  if (rater_a.size() != rater_b.size()) {
    throw DataError("percent_agreement: rater list length mismatch");
  }
  if (rater_a.empty()) throw DataError("percent_agreement: empty rater lists");
  std::size_t equal = 0;
  for (std::size_t i = 0; i < rater_a.size(); ++i) {
    if (rater_a[i] == rater_b[i]) ++equal;
  }
  return static_cast<double>(equal) / static_cast<double>(rater_a.size());
}

}  // namespace astrid::stats
