#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "astrid/judge.hpp"
#include "astrid/metrics.hpp"
#include "astrid/predictors/evaluation.hpp"

namespace astrid::cli {

void ensure_dir(const std::string& dir);
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// "—" for missing values; percents at two decimals, half-up.
std::string percent_cell(const std::optional<double>& fraction);

// Triad summary grouped by generator model (markdown table + JSON object).
std::string summary_markdown(const std::map<std::string, metrics::AggregateRow>& groups);
nlohmann::json summary_json(const std::map<std::string, metrics::AggregateRow>& groups);

// Correlation table for one metric against perceived faithfulness.
std::string correlations_markdown(const std::string& metric_name, double pearson_r,
                                  double spearman_rho, double kendall_tau, double auc);

std::string roc_csv(const stats::RocCurve& curve);

// Per-axis model table (rows: models + Average; columns: per-class F1).
std::string axis_report_markdown(const predictors::AxisReport& report);
nlohmann::json axis_report_json(const predictors::AxisReport& report);

void write_audit_log(const std::string& path,
                     const std::vector<std::pair<std::string, std::vector<judge::Exchange>>>&
                         per_record_exchanges);

// Wall-clock and invocation details live here, away from the deterministic
// reports.
void write_run_meta(const std::string& out_dir, const std::string& command,
                    const nlohmann::json& extra);

}  // namespace astrid::cli
