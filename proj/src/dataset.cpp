#include "astrid/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "astrid/error.hpp"
#include "astrid/util.hpp"

namespace astrid::dataset {

namespace {

using nlohmann::json;

std::optional<Scope> scope_from_string(const std::string& s) {
  if (s == "in_scope") return Scope::InScope;
  if (s == "out_of_scope") return Scope::OutOfScope;
  return std::nullopt;
}

Harmfulness harmfulness_from_string(const std::string& s, const std::string& id) {
  if (s == "harmful") return Harmfulness::Harmful;
  if (s == "unharmful") return Harmfulness::Unharmful;
  throw DataError("record " + id + ": unknown harmfulness value '" + s + "'");
}

Helpfulness helpfulness_from_string(const std::string& s, const std::string& id) {
  if (s == "helpful") return Helpfulness::Helpful;
  if (s == "unhelpful") return Helpfulness::Unhelpful;
  throw DataError("record " + id + ": unknown helpfulness value '" + s + "'");
}

Inappropriateness inappropriateness_from_string(const std::string& s, const std::string& id) {
  if (s == "yes") return Inappropriateness::Yes;
  if (s == "slightly") return Inappropriateness::Slightly;
  if (s == "no") return Inappropriateness::No;
  throw DataError("record " + id + ": unknown inappropriateness value '" + s + "'");
}

void check_keys(const json& obj, const std::set<std::string>& known,
                const std::string& where, bool strict,
                std::vector<std::string>* warnings) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (known.count(it.key()) == 0) {
      std::string msg = where + ": unknown field '" + it.key() + "'";
      if (strict) throw DataError(msg);
      if (warnings != nullptr) warnings->push_back(msg);
    }
  }
}

double fraction_field(const json& obj, const char* key, const std::string& id) {
  double v = obj.at(key).get<double>();
  if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
    throw DataError("record " + id + ": field '" + std::string(key) +
                    "' must be a fraction in [0,1], got " + obj.at(key).dump());
  }
  return v;
}

int round_half_up_count(double x) {
  return static_cast<int>(std::floor(x + 0.5));
}

}  // namespace

std::string to_string(Scope s) {
  return s == Scope::InScope ? "in_scope" : "out_of_scope";
}

std::string to_string(DatasetSchema s) {
  switch (s) {
    case DatasetSchema::Faithfulness: return "faithfulness";
    case DatasetSchema::Unique: return "unique";
    case DatasetSchema::Clinical: return "clinical";
  }
  return "unique";
}

std::string to_string(Harmfulness v) {
  return v == Harmfulness::Harmful ? "harmful" : "unharmful";
}

std::string to_string(Helpfulness v) {
  return v == Helpfulness::Helpful ? "helpful" : "unhelpful";
}

std::string to_string(Inappropriateness v) {
  switch (v) {
    case Inappropriateness::Yes: return "yes";
    case Inappropriateness::Slightly: return "slightly";
    case Inappropriateness::No: return "no";
  }
  return "no";
}

DatasetSchema schema_from_string(const std::string& name) {
  std::string n = util::to_lower(name);
  if (n == "faithfulness") return DatasetSchema::Faithfulness;
  if (n == "unique") return DatasetSchema::Unique;
  if (n == "clinical") return DatasetSchema::Clinical;
  throw ConfigError("unknown dataset schema '" + name +
                    "' (expected faithfulness|unique|clinical)");
}

std::string QacTriplet::joined_context() const {
  std::string out;
  for (std::size_t i = 0; i < context_chunks.size(); ++i) {
    if (i > 0) out += "\n\n";
    out += context_chunks[i];
  }
  return out;
}

Record record_from_json(const json& j, DatasetSchema schema, bool strict,
                        std::vector<std::string>* warnings) {
  if (!j.is_object()) throw DataError("record is not a JSON object");

  static const std::set<std::string> kTopKeys = {
      "schema_version", "id",    "question",      "answer",
      "context_chunks", "scope", "generator_model", "human_ratings",
      "clinician_labels"};
  std::string id = j.contains("id") && j.at("id").is_string()
                       ? j.at("id").get<std::string>()
                       : std::string("<missing id>");
  check_keys(j, kTopKeys, "record " + id, strict, warnings);

  if (j.contains("schema_version")) {
    int v = j.at("schema_version").get<int>();
    if (v != kSchemaVersion) {
      throw DataError("record " + id + ": unsupported schema_version " +
                      std::to_string(v));
    }
  }

  Record record;
  QacTriplet& t = record.triplet;
  if (!j.contains("id") || !j.at("id").is_string()) {
    throw DataError("record " + id + ": missing string field 'id'");
  }
  t.id = j.at("id").get<std::string>();
  if (util::trim(t.id).empty()) throw DataError("record with empty id");

  for (const char* key : {"question", "answer"}) {
    if (!j.contains(key) || !j.at(key).is_string()) {
      throw DataError("record " + t.id + ": missing string field '" + key + "'");
    }
  }
  t.question = j.at("question").get<std::string>();
  t.answer = j.at("answer").get<std::string>();
  if (util::trim(t.question).empty()) {
    throw DataError("record " + t.id + ": question is empty after trim");
  }
  if (util::trim(t.answer).empty()) {
    throw DataError("record " + t.id + ": answer is empty after trim");
  }

  if (!j.contains("context_chunks") || !j.at("context_chunks").is_array()) {
    throw DataError("record " + t.id + ": missing array field 'context_chunks'");
  }
  for (const auto& chunk : j.at("context_chunks")) {
    if (!chunk.is_string()) {
      throw DataError("record " + t.id + ": context_chunks must contain strings");
    }
    t.context_chunks.push_back(chunk.get<std::string>());
  }
  if (t.context_chunks.empty() || t.context_chunks.size() > 3) {
    throw DataError("record " + t.id + ": context_chunks length must be in [1,3], got " +
                    std::to_string(t.context_chunks.size()));
  }

  if (j.contains("scope")) {
    std::string s = j.at("scope").get<std::string>();
    auto scope = scope_from_string(s);
    if (!scope) throw DataError("record " + t.id + ": unknown scope '" + s + "'");
    t.scope = scope;
  }
  if (j.contains("generator_model")) {
    t.generator_model = j.at("generator_model").get<std::string>();
  }

  if (j.contains("human_ratings")) {
    const json& h = j.at("human_ratings");
    static const std::set<std::string> kRatingKeys = {
        "perceived_faithfulness", "cf_human", "rf_human", "cr_human", "ra_human"};
    check_keys(h, kRatingKeys, "record " + t.id + " human_ratings", strict, warnings);
    HumanRatings r;
    if (h.contains("perceived_faithfulness")) {
      r.perceived_faithfulness = h.at("perceived_faithfulness").get<bool>();
    }
    if (h.contains("cf_human")) r.cf_human = fraction_field(h, "cf_human", t.id);
    if (h.contains("rf_human")) r.rf_human = fraction_field(h, "rf_human", t.id);
    if (h.contains("cr_human")) r.cr_human = h.at("cr_human").get<bool>();
    if (h.contains("ra_human")) r.ra_human = h.at("ra_human").get<bool>();
    record.human_ratings = r;
  }

  if (j.contains("clinician_labels")) {
    const json& c = j.at("clinician_labels");
    static const std::set<std::string> kLabelKeys = {"harmfulness", "helpfulness",
                                                     "inappropriateness"};
    check_keys(c, kLabelKeys, "record " + t.id + " clinician_labels", strict, warnings);
    for (const char* key : {"harmfulness", "helpfulness", "inappropriateness"}) {
      if (!c.contains(key)) {
        throw DataError("record " + t.id +
                        ": clinician_labels present but missing '" + key +
                        "' (all three axes required together)");
      }
    }
    ClinicianLabels labels;
    labels.harmfulness = harmfulness_from_string(c.at("harmfulness").get<std::string>(), t.id);
    labels.helpfulness = helpfulness_from_string(c.at("helpfulness").get<std::string>(), t.id);
    labels.inappropriateness =
        inappropriateness_from_string(c.at("inappropriateness").get<std::string>(), t.id);
    record.clinician_labels = labels;
  }

  if (schema == DatasetSchema::Faithfulness && !record.human_ratings) {
    throw DataError("record " + t.id + ": faithfulness schema requires human_ratings");
  }
  if (schema == DatasetSchema::Clinical && !record.clinician_labels) {
    throw DataError("record " + t.id + ": clinical schema requires clinician_labels");
  }

  return record;
}

nlohmann::json record_to_json(const Record& record) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["id"] = record.triplet.id;
  j["question"] = record.triplet.question;
  j["answer"] = record.triplet.answer;
  j["context_chunks"] = record.triplet.context_chunks;
  if (record.triplet.scope) j["scope"] = to_string(*record.triplet.scope);
  if (record.triplet.generator_model) {
    j["generator_model"] = *record.triplet.generator_model;
  }
  if (record.human_ratings) {
    json h = json::object();
    const HumanRatings& r = *record.human_ratings;
    if (r.perceived_faithfulness) h["perceived_faithfulness"] = *r.perceived_faithfulness;
    if (r.cf_human) h["cf_human"] = *r.cf_human;
    if (r.rf_human) h["rf_human"] = *r.rf_human;
    if (r.cr_human) h["cr_human"] = *r.cr_human;
    if (r.ra_human) h["ra_human"] = *r.ra_human;
    j["human_ratings"] = h;
  }
  if (record.clinician_labels) {
    const ClinicianLabels& c = *record.clinician_labels;
    j["clinician_labels"] = {{"harmfulness", to_string(c.harmfulness)},
                             {"helpfulness", to_string(c.helpfulness)},
                             {"inappropriateness", to_string(c.inappropriateness)}};
  }
  return j;
}

LoadResult parse_dataset(const std::string& jsonl_text, DatasetSchema schema,
                         bool strict, const std::string& origin) {
  LoadResult result;
  std::set<std::string> seen_ids;
  std::istringstream in(jsonl_text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (util::trim(line).empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw DataError(origin + ":" + std::to_string(lineno) + ": parse error: " + e.what());
    }
    Record record;
    try {
      record = record_from_json(j, schema, strict, &result.warnings);
    } catch (const Error&) {
      throw;
    } catch (const json::exception& e) {
      throw DataError(origin + ":" + std::to_string(lineno) + ": " + e.what());
    }
    if (!seen_ids.insert(record.triplet.id).second) {
      throw DataError(origin + ":" + std::to_string(lineno) + ": duplicate id '" +
                      record.triplet.id + "'");
    }
    result.records.push_back(std::move(record));
  }
  if (result.records.empty()) {
    result.warnings.push_back(origin + ": dataset is empty");
  }
  return result;
}

LoadResult load_dataset(const std::string& path, DatasetSchema schema, bool strict) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dataset file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dataset(buf.str(), schema, strict, path);
}

void write_dataset(const std::string& path, const std::vector<Record>& records) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open output file: " + path);
  for (const Record& r : records) {
    out << record_to_json(r).dump() << "\n";
  }
}

namespace {

// Largest-remainder allocation of `total` test slots across strata keeps
// each stratum's share within one record of proportional.
std::vector<std::string> stratified_test_ids(const std::vector<Record>& records,
                                             int test_n, std::mt19937_64& rng) {
  std::vector<std::string> stratum_order;
  std::map<std::string, std::vector<std::string>> strata;
  for (const Record& r : records) {
    std::string key = r.triplet.scope ? to_string(*r.triplet.scope) : "none";
    key += "|";
    key += r.clinician_labels ? to_string(r.clinician_labels->harmfulness) : "none";
    if (strata.find(key) == strata.end()) stratum_order.push_back(key);
    strata[key].push_back(r.triplet.id);
  }

  const double n = static_cast<double>(records.size());
  std::vector<int> alloc(stratum_order.size(), 0);
  std::vector<std::pair<double, std::size_t>> remainders;
  int allocated = 0;
  for (std::size_t i = 0; i < stratum_order.size(); ++i) {
    double share = strata[stratum_order[i]].size() * test_n / n;
    alloc[i] = static_cast<int>(std::floor(share));
    allocated += alloc[i];
    remainders.push_back({share - std::floor(share), i});
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (int k = 0; k < test_n - allocated; ++k) {
    alloc[remainders[k % remainders.size()].second] += 1;
  }

  std::vector<std::string> test_ids;
  for (std::size_t i = 0; i < stratum_order.size(); ++i) {
    auto& ids = strata[stratum_order[i]];
    int take = std::min<int>(alloc[i], static_cast<int>(ids.size()));
    util::shuffle(ids, rng);
    for (int k = 0; k < take; ++k) test_ids.push_back(ids[k]);
  }
  return test_ids;
}

std::vector<std::string> in_dataset_order(const std::vector<Record>& records,
                                          const std::set<std::string>& wanted) {
  std::vector<std::string> out;
  for (const Record& r : records) {
    if (wanted.count(r.triplet.id)) out.push_back(r.triplet.id);
  }
  return out;
}

}  // namespace

DatasetSplit split_dataset(const std::vector<Record>& records,
                           const std::vector<std::string>& explicit_test_ids,
                           std::uint64_t seed) {
  if (records.size() < 6) {
    throw DataError("dataset too small to split: " + std::to_string(records.size()) +
                    " records (need at least 6)");
  }
  std::set<std::string> all_ids;
  for (const Record& r : records) all_ids.insert(r.triplet.id);

  std::mt19937_64 rng = util::seeded_rng(seed);
  std::set<std::string> test_set;
  if (!explicit_test_ids.empty()) {
    for (const std::string& id : explicit_test_ids) {
      if (all_ids.count(id) == 0) {
        throw DataError("explicit test id '" + id + "' not present in dataset");
      }
      if (!test_set.insert(id).second) {
        throw DataError("explicit test id '" + id + "' given twice");
      }
    }
  } else {
    int test_n = round_half_up_count(records.size() * 0.175);
    for (auto& id : stratified_test_ids(records, test_n, rng)) test_set.insert(id);
  }

  std::vector<std::string> remainder;
  for (const Record& r : records) {
    if (test_set.count(r.triplet.id) == 0) remainder.push_back(r.triplet.id);
  }
  int val_n = round_half_up_count(remainder.size() * 0.21);
  util::shuffle(remainder, rng);
  std::set<std::string> val_set(remainder.begin(), remainder.begin() + val_n);

  DatasetSplit split;
  split.seed = seed;
  split.test = in_dataset_order(records, test_set);
  split.val = in_dataset_order(records, val_set);
  std::set<std::string> train_set;
  for (const std::string& id : all_ids) {
    if (!test_set.count(id) && !val_set.count(id)) train_set.insert(id);
  }
  split.train = in_dataset_order(records, train_set);
  return split;
}

DatasetSplit split_dataset(const std::vector<Record>& records, std::uint64_t seed) {
  return split_dataset(records, {}, seed);
}

nlohmann::json split_to_json(const DatasetSplit& split) {
  return {{"schema_version", kSchemaVersion},
          {"seed", split.seed},
          {"train", split.train},
          {"val", split.val},
          {"test", split.test}};
}

DatasetSplit split_from_json(const nlohmann::json& j) {
  DatasetSplit split;
  split.seed = j.at("seed").get<std::uint64_t>();
  split.train = j.at("train").get<std::vector<std::string>>();
  split.val = j.at("val").get<std::vector<std::string>>();
  split.test = j.at("test").get<std::vector<std::string>>();
  return split;
}

}  // namespace astrid::dataset
