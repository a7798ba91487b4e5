#include "reports.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "astrid/error.hpp"
#include "astrid/util.hpp"

namespace astrid::cli {

namespace fs = std::filesystem;
using nlohmann::json;

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError("cannot create directory " + dir + ": " + ec.message());
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write file: " + path);
  out << content;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string percent_cell(const std::optional<double>& fraction) {
  return fraction ? util::format_percent(*fraction) : std::string("—");
}

std::string summary_markdown(const std::map<std::string, metrics::AggregateRow>& groups) {
  std::ostringstream md;
  md << "| Model | Avg CF (%) | Avg CR (%) | Avg RA (%) | N | CF defined |\n";
  md << "|---|---|---|---|---|---|\n";
  for (const auto& [model, row] : groups) {
    md << "| " << model << " | " << percent_cell(row.avg_cf) << " | "
       << util::format_percent(row.avg_cr) << " | " << util::format_percent(row.avg_ra)
       << " | " << row.n << " | " << row.cf_defined << " |\n";
  }
  return md.str();
}

nlohmann::json summary_json(const std::map<std::string, metrics::AggregateRow>& groups) {
  json out = json::object();
  for (const auto& [model, row] : groups) {
    json g;
    g["n"] = row.n;
    g["cf_defined"] = row.cf_defined;
    g["avg_cf_pct"] =
        row.avg_cf ? json(util::round_half_up(*row.avg_cf * 100.0, 2)) : json(nullptr);
    g["avg_cr_pct"] = util::round_half_up(row.avg_cr * 100.0, 2);
    g["avg_ra_pct"] = util::round_half_up(row.avg_ra * 100.0, 2);
    out[model] = g;
  }
  return out;
}

std::string correlations_markdown(const std::string& metric_name, double pearson_r,
                                  double spearman_rho, double kendall_tau, double auc) {
  char buf[64];
  std::ostringstream md;
  std::string upper = metric_name;
  for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  md << "| Correlation Type | " << upper << " vs PF |\n|---|---|\n";
  std::snprintf(buf, sizeof(buf), "%.4f", pearson_r);
  md << "| Pearson correlation | " << buf << " |\n";
  std::snprintf(buf, sizeof(buf), "%.4f", spearman_rho);
  md << "| Spearman correlation | " << buf << " |\n";
  std::snprintf(buf, sizeof(buf), "%.4f", kendall_tau);
  md << "| Kendall Tau correlation | " << buf << " |\n";
  std::snprintf(buf, sizeof(buf), "%.4f", auc);
  md << "\nROC AUC: " << buf << "\n";
  return md.str();
}

std::string roc_csv(const stats::RocCurve& curve) {
  std::ostringstream csv;
  csv << "fpr,tpr,threshold\n";
  char buf[96];
  for (const stats::RocPoint& p : curve.points) {
    if (std::isinf(p.threshold)) {
      std::snprintf(buf, sizeof(buf), "%.10g,%.10g,inf", p.fpr, p.tpr);
    } else {
      std::snprintf(buf, sizeof(buf), "%.10g,%.10g,%.10g", p.fpr, p.tpr, p.threshold);
    }
    csv << buf << "\n";
  }
  return csv.str();
}

std::string axis_report_markdown(const predictors::AxisReport& report) {
  std::ostringstream md;
  md << "| Model |";
  for (const std::string& cls : report.classes) md << " " << cls << " (F1) |";
  md << "\n|---|";
  for (std::size_t i = 0; i < report.classes.size(); ++i) md << "---|";
  md << "\n";
  char buf[32];
  for (const auto& row : report.rows) {
    md << "| " << predictors::display_name(row.kind) << " |";
    for (const auto& score : row.report.per_class) {
      std::snprintf(buf, sizeof(buf), "%.2f", score.f1);
      md << " " << buf << " |";
    }
    md << "\n";
  }
  md << "| **Average** |";
  for (double f1 : report.average_f1) {
    std::snprintf(buf, sizeof(buf), "%.2f", f1);
    md << " " << buf << " |";
  }
  md << "\n";
  return md.str();
}

nlohmann::json axis_report_json(const predictors::AxisReport& report) {
  json rows = json::object();
  for (const auto& row : report.rows) {
    json per_class = json::object();
    for (std::size_t c = 0; c < report.classes.size(); ++c) {
      const auto& score = row.report.per_class[c];
      per_class[report.classes[c]] = {{"precision", score.precision},
                                      {"recall", score.recall},
                                      {"f1", score.f1},
                                      {"support", score.support},
                                      {"absent", score.absent}};
    }
    rows[predictors::to_string(row.kind)] = {{"per_class", per_class},
                                             {"macro_f1", row.report.macro_f1}};
  }
  json average = json::object();
  for (std::size_t c = 0; c < report.classes.size(); ++c) {
    average[report.classes[c]] = report.average_f1[c];
  }
  return {{"axis", predictors::to_string(report.axis)},
          {"classes", report.classes},
          {"models", rows},
          {"average_f1", average}};
}

void write_audit_log(
    const std::string& path,
    const std::vector<std::pair<std::string, std::vector<judge::Exchange>>>&
        per_record_exchanges) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write audit log: " + path);
  for (const auto& [triplet_id, exchanges] : per_record_exchanges) {
    for (const judge::Exchange& exchange : exchanges) {
      json line = {{"triplet_id", triplet_id},
                   {"template", judge::to_string(exchange.template_id)},
                   {"key", exchange.key},
                   {"prompt", exchange.prompt},
                   {"response", exchange.response}};
      out << line.dump() << "\n";
    }
  }
}

void write_run_meta(const std::string& out_dir, const std::string& command,
                    const nlohmann::json& extra) {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char stamp[32];
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  json meta = {{"command", command}, {"finished_at", stamp}};
  for (auto it = extra.begin(); it != extra.end(); ++it) meta[it.key()] = it.value();
  write_text_file((fs::path(out_dir) / "run_meta.json").string(), meta.dump(2) + "\n");
}

}  // namespace astrid::cli
