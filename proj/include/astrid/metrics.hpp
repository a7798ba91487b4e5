#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "astrid/dataset.hpp"
#include "astrid/judge.hpp"

namespace astrid::metrics {

// Conversational faithfulness over one triplet. Acknowledgements and
// questions never enter the denominator; score is undefined (nullopt) when
// the answer has no informative sentences.
struct CfResult {
  int informative_count = 0;
  int grounded_count = 0;
  std::optional<double> score;
  judge::SentenceClassification classification;
  judge::VerdictSet verdicts;
};

std::optional<double> cf_score(int informative_count, int grounded_count);

CfResult conversational_faithfulness(const judge::Judge& judge,
                                     const dataset::QacTriplet& triplet);

// Baseline faithfulness: supported statements over statements extracted
// from question+answer jointly. Zero statements -> undefined.
struct RagasFaithfulness {
  std::vector<std::string> statements;
  judge::VerdictSet verdicts;
  std::optional<double> score;
};

RagasFaithfulness ragas_faithfulness(const judge::Judge& judge,
                                     const dataset::QacTriplet& triplet);

struct RefusalOutcome {
  bool refused = false;
  // refused == (scope == OutOfScope); omitted when scope is absent.
  std::optional<bool> correct;
};

RefusalOutcome refusal_accuracy(const judge::Judge& judge,
                                const dataset::QacTriplet& triplet);

// Single binary verdict over the concatenated chunks; extra retrieved
// chunks are not penalized.
bool context_relevance(const judge::Judge& judge, const dataset::QacTriplet& triplet);

// Fraction of context sentences judged relevant to the question; each
// sentence gets its own relevance verdict. Empty context -> undefined.
std::optional<double> ragas_context_relevance_ratio(const judge::Judge& judge,
                                                    const std::string& question,
                                                    const std::string& context);

// Mean cosine similarity between the original question's embedding and the
// embeddings of n questions generated from the answer.
double answer_relevance(const judge::Judge& judge, judge::Embedder& embedder,
                        const std::string& question, const std::string& answer,
                        int n = 3);

double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b);

struct MetricSelection {
  bool cf = true;
  bool ra = true;
  bool cr = true;
  bool rf = false;
  bool cr_ratio = false;
  bool answer_rel = false;
};

MetricSelection metric_selection_from_list(const std::string& csv);

struct TriadResult {
  std::string id;
  std::string generator_model;  // empty when the record names none
  CfResult cf;
  bool ra_refused = false;
  std::optional<bool> ra_correct;
  bool cr_relevant = false;
  std::optional<double> rf_baseline;
  std::optional<double> cr_ratio_baseline;
  std::optional<double> answer_relevance;
  std::vector<std::string> audit_keys;
};

TriadResult evaluate_triplet(const judge::Judge& judge, judge::Embedder* embedder,
                             const dataset::QacTriplet& triplet,
                             const MetricSelection& selection);

nlohmann::json triad_to_json(const TriadResult& result, const MetricSelection& selection);
TriadResult triad_from_json(const nlohmann::json& j);

// Aggregate means as fractions. avg_cf skips undefined CF scores; avg_ra is
// the raw refusal-detection rate.
struct AggregateRow {
  int n = 0;
  int cf_defined = 0;
  std::optional<double> avg_cf;
  double avg_cr = 0.0;
  double avg_ra = 0.0;
};

AggregateRow aggregate(const std::vector<TriadResult>& group);
std::map<std::string, AggregateRow> aggregate_by_model(const std::vector<TriadResult>& results);

// Same row computed from human ratings (per-metric missing fields skipped).
struct HumanAggregateRow {
  int cf_n = 0, cr_n = 0, ra_n = 0;
  std::optional<double> avg_cf, avg_cr, avg_ra;
};
HumanAggregateRow aggregate_human(const std::vector<dataset::Record>& records);

}  // namespace astrid::metrics
