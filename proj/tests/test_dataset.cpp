#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "astrid/dataset.hpp"
#include "astrid/error.hpp"
#include "astrid/util.hpp"
#include "test_support.hpp"

using namespace astrid;
using namespace astrid::dataset;

namespace {

std::string valid_line(const std::string& id, int chunks = 1,
                       const std::string& extra = "") {
  std::string line = R"({"id":")" + id +
                     R"(","question":"Can I shower?","answer":"Yes, after a day.",)"
                     R"("context_chunks":[)";
  for (int i = 0; i < chunks; ++i) {
    if (i > 0) line += ",";
    line += R"("Showering is safe after 24 hours.")";
  }
  line += R"(],"scope":"in_scope")";
  line += extra;
  line += "}";
  return line;
}

}  // namespace

TEST_CASE("load accepts valid records and reports count") {
  std::string text = valid_line("a") + "\n" + valid_line("b", 3) + "\n";
  LoadResult result = parse_dataset(text, DatasetSchema::Unique);
  CHECK(result.records.size() == 2);
  CHECK(result.warnings.empty());
  CHECK(result.records[1].triplet.context_chunks.size() == 3);
}

TEST_CASE("empty file loads as empty list with a warning") {
  LoadResult result = parse_dataset("", DatasetSchema::Unique);
  CHECK(result.records.empty());
  REQUIRE(result.warnings.size() == 1);
  CHECK(result.warnings[0].find("empty") != std::string::npos);
}

TEST_CASE("context chunk bound violations name the id and the bound") {
  std::string text = valid_line("bad", 4);
  try {
    parse_dataset(text, DatasetSchema::Unique);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    std::string msg = e.what();
    CHECK(msg.find("bad") != std::string::npos);
    CHECK(msg.find("[1,3]") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_dataset(
                      R"({"id":"x","question":"q","answer":"a","context_chunks":[]})",
                      DatasetSchema::Unique),
                  DataError);
}

TEST_CASE("parse errors carry the line number") {
  std::string text = valid_line("a") + "\nnot json\n";
  try {
    parse_dataset(text, DatasetSchema::Unique, true, "data.jsonl");
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("data.jsonl:2") != std::string::npos);
  }
}

TEST_CASE("duplicate ids are rejected") {
  std::string text = valid_line("a") + "\n" + valid_line("a") + "\n";
  CHECK_THROWS_WITH_AS(parse_dataset(text, DatasetSchema::Unique),
                       doctest::Contains("duplicate id 'a'"), DataError);
}

TEST_CASE("whitespace-only question or answer is rejected") {
  std::string text =
      R"({"id":"w","question":"  ","answer":"a","context_chunks":["c"]})";
  CHECK_THROWS_AS(parse_dataset(text, DatasetSchema::Unique), DataError);
}

TEST_CASE("unknown fields reject under strict mode and warn otherwise") {
  std::string text = valid_line("a", 1, R"(,"mystery":1)");
  CHECK_THROWS_WITH_AS(parse_dataset(text, DatasetSchema::Unique, true),
                       doctest::Contains("mystery"), DataError);
  LoadResult lenient = parse_dataset(text, DatasetSchema::Unique, false);
  CHECK(lenient.records.size() == 1);
  REQUIRE(lenient.warnings.size() == 1);
  CHECK(lenient.warnings[0].find("mystery") != std::string::npos);
}

TEST_CASE("clinician labels must come as a complete set") {
  std::string text = valid_line(
      "c", 1, R"(,"clinician_labels":{"harmfulness":"harmful","helpfulness":"helpful"})");
  CHECK_THROWS_WITH_AS(parse_dataset(text, DatasetSchema::Unique),
                       doctest::Contains("inappropriateness"), DataError);
}

TEST_CASE("schema-specific requirements") {
  CHECK_THROWS_AS(parse_dataset(valid_line("a"), DatasetSchema::Faithfulness), DataError);
  CHECK_THROWS_AS(parse_dataset(valid_line("a"), DatasetSchema::Clinical), DataError);
  std::string clinical = valid_line(
      "a", 1,
      R"(,"clinician_labels":{"harmfulness":"unharmful","helpfulness":"helpful","inappropriateness":"no"})");
  CHECK(parse_dataset(clinical, DatasetSchema::Clinical).records.size() == 1);
}

TEST_CASE("human rating fractions outside [0,1] are rejected") {
  std::string text = valid_line("h", 1, R"(,"human_ratings":{"cf_human":1.5})");
  CHECK_THROWS_AS(parse_dataset(text, DatasetSchema::Unique), DataError);
}

TEST_CASE("round-trip: serialize then reload yields identical records") {
  std::mt19937_64 rng(7);
  std::vector<Record> records;
  for (int i = 0; i < 60; ++i) {
    Record r = test_support::make_record(
        "id" + std::to_string(i), "Question " + std::to_string(i) + "?",
        "Answer " + std::to_string(i) + ".",
        std::vector<std::string>(1 + rng() % 3, "chunk text"),
        rng() % 3 == 0 ? std::optional<Scope>{} :
        std::optional<Scope>{rng() % 2 ? Scope::InScope : Scope::OutOfScope});
    if (rng() % 2) r.triplet.generator_model = "model-" + std::to_string(rng() % 3);
    if (rng() % 2) {
      HumanRatings h;
      h.cf_human = (rng() % 101) / 100.0;
      h.perceived_faithfulness = rng() % 2 == 0;
      h.ra_human = rng() % 2 == 0;
      r.human_ratings = h;
    }
    if (rng() % 3 == 0) {
      ClinicianLabels c;
      c.harmfulness = rng() % 2 ? Harmfulness::Harmful : Harmfulness::Unharmful;
      c.helpfulness = rng() % 2 ? Helpfulness::Helpful : Helpfulness::Unhelpful;
      c.inappropriateness = Inappropriateness::Slightly;
      r.clinician_labels = c;
    }
    records.push_back(r);
  }

  std::string jsonl;
  for (const Record& r : records) jsonl += record_to_json(r).dump() + "\n";
  LoadResult reloaded = parse_dataset(jsonl, DatasetSchema::Unique);
  REQUIRE(reloaded.records.size() == records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(record_to_json(reloaded.records[i]) == record_to_json(records[i]));
  }
}

namespace {

std::vector<Record> synthetic_records(int n, std::mt19937_64& rng) {
  std::vector<Record> records;
  for (int i = 0; i < n; ++i) {
    Record r = test_support::make_record(
        "r" + std::to_string(i), "q?", "a.", {"c"},
        rng() % 3 == 0 ? Scope::OutOfScope : Scope::InScope);
    if (rng() % 2 == 0) {
      ClinicianLabels c;
      c.harmfulness = rng() % 4 == 0 ? Harmfulness::Harmful : Harmfulness::Unharmful;
      r.clinician_labels = c;
    }
    records.push_back(r);
  }
  return records;
}

}  // namespace

TEST_CASE("split sizes follow the 17.5 / 21 percent rule with half-up rounding") {
  std::mt19937_64 rng(3);
  std::vector<Record> records = synthetic_records(132, rng);
  DatasetSplit split = split_dataset(records, 9);
  // 132 * 0.175 = 23.1 -> 23; (132-23) * 0.21 = 22.89 -> 23; train = 86
  CHECK(split.test.size() == 23);
  CHECK(split.val.size() == 23);
  CHECK(split.train.size() == 86);
}

TEST_CASE("split is deterministic for a fixed seed") {
  std::mt19937_64 rng(4);
  std::vector<Record> records = synthetic_records(97, rng);
  DatasetSplit a = split_dataset(records, 1234);
  DatasetSplit b = split_dataset(records, 1234);
  CHECK(a.train == b.train);
  CHECK(a.val == b.val);
  CHECK(a.test == b.test);
  DatasetSplit c = split_dataset(records, 1235);
  CHECK(a.test != c.test);
}

TEST_CASE("explicit test ids pass through and the remainder splits 79/21") {
  std::mt19937_64 rng(5);
  std::vector<Record> records = synthetic_records(132, rng);
  std::vector<std::string> chosen;
  for (int i = 0; i < 23; ++i) chosen.push_back("r" + std::to_string(i * 5));
  DatasetSplit split = split_dataset(records, chosen, 7);
  std::set<std::string> test_set(split.test.begin(), split.test.end());
  for (const std::string& id : chosen) CHECK(test_set.count(id) == 1);
  CHECK(split.test.size() == 23);
  CHECK(split.val.size() == 23);  // round(109 * 0.21) = 23
  CHECK(split.train.size() == 86);

  CHECK_THROWS_AS(split_dataset(records, {"missing-id"}, 7), DataError);
}

TEST_CASE("datasets below 6 records refuse to split") {
  std::mt19937_64 rng(6);
  std::vector<Record> records = synthetic_records(5, rng);
  CHECK_THROWS_AS(split_dataset(records, 1), DataError);
  CHECK(split_dataset(synthetic_records(6, rng), 1).test.size() == 1);
}

TEST_CASE("property: splits partition the id set for random sizes and seeds") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 6 + static_cast<int>(rng() % 495);
    std::vector<Record> records = synthetic_records(n, rng);
    DatasetSplit split = split_dataset(records, rng());

    std::set<std::string> seen;
    for (const auto* part : {&split.train, &split.val, &split.test}) {
      for (const std::string& id : *part) {
        CHECK_MESSAGE(seen.insert(id).second, "id assigned twice: " << id);
      }
    }
    CHECK(seen.size() == static_cast<std::size_t>(n));
  }
}

TEST_CASE("property: stratified test split preserves stratum shares within one record") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 40 + static_cast<int>(rng() % 200);
    std::vector<Record> records = synthetic_records(n, rng);
    DatasetSplit split = split_dataset(records, rng());
    std::set<std::string> test_set(split.test.begin(), split.test.end());

    std::map<std::string, std::pair<int, int>> strata;  // key -> (total, in test)
    for (const Record& r : records) {
      std::string key = r.triplet.scope ? to_string(*r.triplet.scope) : "none";
      key += "|";
      key += r.clinician_labels ? to_string(r.clinician_labels->harmfulness) : "none";
      strata[key].first += 1;
      if (test_set.count(r.triplet.id)) strata[key].second += 1;
    }
    double frac = static_cast<double>(split.test.size()) / n;
    for (const auto& [key, counts] : strata) {
      double expected = counts.first * frac;
      CHECK_MESSAGE(std::abs(counts.second - expected) <= 1.0 + 1e-9,
                    "stratum " << key << " expected " << expected << " got "
                               << counts.second);
    }
  }
}

TEST_CASE("split serialization round-trips") {
  std::mt19937_64 rng(44);
  std::vector<Record> records = synthetic_records(30, rng);
  DatasetSplit split = split_dataset(records, 11);
  DatasetSplit copy = split_from_json(split_to_json(split));
  CHECK(copy.train == split.train);
  CHECK(copy.val == split.val);
  CHECK(copy.test == split.test);
  CHECK(copy.seed == split.seed);
}
