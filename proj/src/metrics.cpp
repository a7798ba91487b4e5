#include "astrid/metrics.hpp"

#include <cmath>
#include <sstream>

#include "astrid/error.hpp"
#include "astrid/sentences.hpp"
#include "astrid/util.hpp"

namespace astrid::metrics {

namespace {

using nlohmann::json;

[[noreturn]] void rethrow_with_triplet(const Error& e, const std::string& id) {
  std::string msg = "triplet " + id + ": " + e.what();
  switch (e.kind()) {
    case ErrorKind::Config: throw ConfigError(msg);
    case ErrorKind::Data: throw DataError(msg);
    case ErrorKind::Judge: throw JudgeError(msg);
    case ErrorKind::Internal: throw InternalError(msg);
  }
  throw InternalError(msg);
}

}  // namespace

std::optional<double> cf_score(int informative_count, int grounded_count) {
  if (informative_count < 0 || grounded_count < 0 || grounded_count > informative_count) {
    throw InternalError("cf_score: counts out of range");
  }
  if (informative_count == 0) return std::nullopt;
  return static_cast<double>(grounded_count) / static_cast<double>(informative_count);
}

CfResult conversational_faithfulness(const judge::Judge& judge,
                                     const dataset::QacTriplet& triplet) {
  try {
    CfResult result;
    std::vector<std::string> sentences = judge::split_sentences(triplet.answer);
    if (sentences.empty()) {
      result.score = std::nullopt;
      return result;
    }
    result.classification = judge::classify_sentences(judge, sentences);
    result.informative_count = static_cast<int>(result.classification.informative.size());
    if (result.informative_count == 0) {
      result.score = std::nullopt;
      return result;
    }
    result.verdicts = judge::grounding_verdicts(judge, triplet.question,
                                                triplet.joined_context(),
                                                result.classification.informative);
    result.grounded_count = result.verdicts.supported_count();
    result.score = cf_score(result.informative_count, result.grounded_count);
    return result;
  } catch (const Error& e) {
    rethrow_with_triplet(e, triplet.id);
  }
}

RagasFaithfulness ragas_faithfulness(const judge::Judge& judge,
                                     const dataset::QacTriplet& triplet) {
  try {
    RagasFaithfulness result;
    auto statements =
        judge::try_extract_statements(judge, triplet.question, triplet.answer);
    if (!statements) {
      // Refusal-style answers can legitimately yield no statements.
      result.score = std::nullopt;
      return result;
    }
    result.statements = *statements;
    result.verdicts = judge::grounding_verdicts(judge, triplet.question,
                                                triplet.joined_context(), result.statements);
    result.score = static_cast<double>(result.verdicts.supported_count()) /
                   static_cast<double>(result.statements.size());
    return result;
  } catch (const Error& e) {
    rethrow_with_triplet(e, triplet.id);
  }
}

RefusalOutcome refusal_accuracy(const judge::Judge& judge,
                                const dataset::QacTriplet& triplet) {
  try {
    RefusalOutcome outcome;
    outcome.refused = judge::refusal_verdict(judge, triplet.question, triplet.answer);
    if (triplet.scope) {
      outcome.correct = (outcome.refused == (*triplet.scope == dataset::Scope::OutOfScope));
    }
    return outcome;
  } catch (const Error& e) {
    rethrow_with_triplet(e, triplet.id);
  }
}

bool context_relevance(const judge::Judge& judge, const dataset::QacTriplet& triplet) {
  try {
    return judge::context_relevance_verdict(judge, triplet.question,
                                            triplet.joined_context());
  } catch (const Error& e) {
    rethrow_with_triplet(e, triplet.id);
  }
}

std::optional<double> ragas_context_relevance_ratio(const judge::Judge& judge,
                                                    const std::string& question,
                                                    const std::string& context) {
  std::vector<std::string> sentences = judge::split_sentences(context);
  if (sentences.empty()) return std::nullopt;
  int relevant = 0;
  for (const std::string& sentence : sentences) {
    if (judge::context_relevance_verdict(judge, question, sentence)) ++relevant;
  }
  return static_cast<double>(relevant) / static_cast<double>(sentences.size());
}

double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.empty()) {
    throw DataError("cosine: dimension mismatch (" + std::to_string(a.size()) + " vs " +
                    std::to_string(b.size()) + ")");
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) throw DataError("cosine: zero-norm embedding");
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

double answer_relevance(const judge::Judge& judge, judge::Embedder& embedder,
                        const std::string& question, const std::string& answer, int n) {
  std::vector<std::string> generated = judge::generate_questions(judge, answer, n);
  std::vector<double> original = judge::embed_text(embedder, question);
  double sum = 0.0;
  for (const std::string& q : generated) {
    sum += cosine_similarity(judge::embed_text(embedder, q), original);
  }
  return sum / static_cast<double>(generated.size());
}

MetricSelection metric_selection_from_list(const std::string& csv) {
  MetricSelection sel{false, false, false, false, false, false};
  std::istringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::string name = util::to_lower(util::trim(item));
    if (name.empty()) continue;
    if (name == "cf") sel.cf = true;
    else if (name == "ra") sel.ra = true;
    else if (name == "cr") sel.cr = true;
    else if (name == "rf") sel.rf = true;
    else if (name == "cr_ratio" || name == "crr") sel.cr_ratio = true;
    else if (name == "answer_relevance" || name == "ar") sel.answer_rel = true;
    else throw ConfigError("unknown metric '" + name + "' in --metrics");
  }
  if (!sel.cf && !sel.ra && !sel.cr && !sel.rf && !sel.cr_ratio && !sel.answer_rel) {
    throw ConfigError("--metrics selected no metrics");
  }
  return sel;
}

TriadResult evaluate_triplet(const judge::Judge& judge, judge::Embedder* embedder,
                             const dataset::QacTriplet& triplet,
                             const MetricSelection& selection) {
  TriadResult result;
  result.id = triplet.id;
  result.generator_model = triplet.generator_model.value_or("");
  if (selection.cf) result.cf = conversational_faithfulness(judge, triplet);
  if (selection.ra) {
    RefusalOutcome outcome = refusal_accuracy(judge, triplet);
    result.ra_refused = outcome.refused;
    result.ra_correct = outcome.correct;
  }
  if (selection.cr) result.cr_relevant = context_relevance(judge, triplet);
  if (selection.rf) result.rf_baseline = ragas_faithfulness(judge, triplet).score;
  if (selection.cr_ratio) {
    result.cr_ratio_baseline =
        ragas_context_relevance_ratio(judge, triplet.question, triplet.joined_context());
  }
  if (selection.answer_rel) {
    if (embedder == nullptr) {
      throw ConfigError("answer_relevance selected but no embedding endpoint configured");
    }
    result.answer_relevance =
        answer_relevance(judge, *embedder, triplet.question, triplet.answer);
  }
  return result;
}

namespace {

json optional_to_json(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

json optional_to_json(const std::optional<bool>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> optional_from_json(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

}  // namespace

nlohmann::json triad_to_json(const TriadResult& result, const MetricSelection& selection) {
  json j;
  j["id"] = result.id;
  if (!result.generator_model.empty()) j["generator_model"] = result.generator_model;
  if (selection.cf) {
    j["cf"] = {{"score", optional_to_json(result.cf.score)},
               {"informative_count", result.cf.informative_count},
               {"grounded_count", result.cf.grounded_count},
               {"acknowledgements", result.cf.classification.acknowledgements.size()},
               {"questions", result.cf.classification.questions.size()}};
  }
  if (selection.ra) {
    j["ra_refused"] = result.ra_refused;
    j["ra_correct"] = optional_to_json(result.ra_correct);
  }
  if (selection.cr) j["cr_relevant"] = result.cr_relevant;
  if (selection.rf) j["rf_baseline"] = optional_to_json(result.rf_baseline);
  if (selection.cr_ratio) j["cr_ratio_baseline"] = optional_to_json(result.cr_ratio_baseline);
  if (selection.answer_rel) j["answer_relevance"] = optional_to_json(result.answer_relevance);
  if (!result.audit_keys.empty()) j["audit_keys"] = result.audit_keys;
  return j;
}

TriadResult triad_from_json(const nlohmann::json& j) {
  TriadResult r;
  r.id = j.at("id").get<std::string>();
  if (j.contains("generator_model")) r.generator_model = j.at("generator_model");
  if (j.contains("cf")) {
    const json& cf = j.at("cf");
    r.cf.score = optional_from_json<double>(cf, "score");
    r.cf.informative_count = cf.value("informative_count", 0);
    r.cf.grounded_count = cf.value("grounded_count", 0);
  }
  if (j.contains("ra_refused")) r.ra_refused = j.at("ra_refused").get<bool>();
  r.ra_correct = optional_from_json<bool>(j, "ra_correct");
  if (j.contains("cr_relevant")) r.cr_relevant = j.at("cr_relevant").get<bool>();
  r.rf_baseline = optional_from_json<double>(j, "rf_baseline");
  r.cr_ratio_baseline = optional_from_json<double>(j, "cr_ratio_baseline");
  r.answer_relevance = optional_from_json<double>(j, "answer_relevance");
  if (j.contains("audit_keys")) {
    r.audit_keys = j.at("audit_keys").get<std::vector<std::string>>();
  }
  return r;
}

AggregateRow aggregate(const std::vector<TriadResult>& group) {
  if (group.empty()) throw DataError("aggregate: empty group");
  AggregateRow row;
  row.n = static_cast<int>(group.size());
  double cf_sum = 0.0;
  int cr_true = 0, ra_true = 0;
  for (const TriadResult& r : group) {
    if (r.cf.score) {
      cf_sum += *r.cf.score;
      row.cf_defined += 1;
    }
    cr_true += r.cr_relevant ? 1 : 0;
    ra_true += r.ra_refused ? 1 : 0;
  }
  if (row.cf_defined > 0) row.avg_cf = cf_sum / row.cf_defined;
  row.avg_cr = static_cast<double>(cr_true) / row.n;
  row.avg_ra = static_cast<double>(ra_true) / row.n;
  return row;
}

std::map<std::string, AggregateRow> aggregate_by_model(
    const std::vector<TriadResult>& results) {
  std::map<std::string, std::vector<TriadResult>> groups;
  for (const TriadResult& r : results) {
    groups[r.generator_model.empty() ? "(unspecified)" : r.generator_model].push_back(r);
  }
  std::map<std::string, AggregateRow> rows;
  for (const auto& [model, group] : groups) rows[model] = aggregate(group);
  return rows;
}

HumanAggregateRow aggregate_human(const std::vector<dataset::Record>& records) {
  HumanAggregateRow row;
  double cf_sum = 0.0;
  int cr_true = 0, ra_true = 0;
  for (const dataset::Record& r : records) {
    if (!r.human_ratings) continue;
    const dataset::HumanRatings& h = *r.human_ratings;
    if (h.cf_human) {
      cf_sum += *h.cf_human;
      row.cf_n += 1;
    }
    if (h.cr_human) {
      cr_true += *h.cr_human ? 1 : 0;
      row.cr_n += 1;
    }
    if (h.ra_human) {
      ra_true += *h.ra_human ? 1 : 0;
      row.ra_n += 1;
    }
  }
  if (row.cf_n > 0) row.avg_cf = cf_sum / row.cf_n;
  if (row.cr_n > 0) row.avg_cr = static_cast<double>(cr_true) / row.cr_n;
  if (row.ra_n > 0) row.avg_ra = static_cast<double>(ra_true) / row.ra_n;
  return row;
}

}  // namespace astrid::metrics
