#pragma once

#include <string>
#include <vector>

namespace astrid::stats {

// Two aligned real series, length >= 2, all values finite. Construction
// validates.
struct PairedSeries {
  std::vector<double> x;
  std::vector<double> y;

  PairedSeries(std::vector<double> x_in, std::vector<double> y_in);
  std::size_t size() const { return x.size(); }
};

// Mean ranks for ties ("average" ranking), 1-based.
std::vector<double> average_ranks(const std::vector<double>& values);

double pearson(const PairedSeries& series);
// Pearson applied to average-ranked data.
double spearman(const PairedSeries& series);
// Tie-corrected Kendall tau-b via sort + merge-based discordance counting.
double kendall_tau_b(const PairedSeries& series);

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
  double threshold = 0.0;
};

// Sweep over the distinct score values (descending) plus a +inf sentinel;
// higher score predicts the positive label. auc is the trapezoidal area,
// which equals the Mann-Whitney concordance statistic (ties at half credit).
struct RocCurve {
  std::vector<RocPoint> points;
  double auc = 0.0;
};

RocCurve roc(const std::vector<double>& scores, const std::vector<bool>& labels);

struct ClassScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  int support = 0;
  bool absent = false;  // never predicted and never actual; f1 = 0 by convention
};

struct ClassificationReport {
  std::vector<std::string> classes;
  std::vector<ClassScore> per_class;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
};

ClassificationReport classification_report(const std::vector<std::string>& predicted,
                                           const std::vector<std::string>& actual,
                                           const std::vector<std::string>& classes);

double percent_agreement(const std::vector<std::string>& rater_a,
                         const std::vector<std::string>& rater_b);

}  // namespace astrid::stats
