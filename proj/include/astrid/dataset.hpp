#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace astrid::dataset {

enum class Scope { InScope, OutOfScope };
enum class DatasetSchema { Faithfulness, Unique, Clinical };

enum class Harmfulness { Harmful, Unharmful };
enum class Helpfulness { Helpful, Unhelpful };
enum class Inappropriateness { Yes, Slightly, No };

std::string to_string(Scope s);
std::string to_string(DatasetSchema s);
std::string to_string(Harmfulness v);
std::string to_string(Helpfulness v);
std::string to_string(Inappropriateness v);
DatasetSchema schema_from_string(const std::string& name);

// One question/answer/context record; the atomic evaluation unit. The
// system under evaluation retrieves at most the top three chunks, so
// context_chunks is bounded to [1,3].
struct QacTriplet {
  std::string id;
  std::string question;
  std::string answer;
  std::vector<std::string> context_chunks;
  std::optional<Scope> scope;
  std::optional<std::string> generator_model;

  std::string joined_context() const;
};

struct HumanRatings {
  std::optional<bool> perceived_faithfulness;
  std::optional<double> cf_human;
  std::optional<double> rf_human;
  std::optional<bool> cr_human;
  std::optional<bool> ra_human;

  bool empty() const {
    return !perceived_faithfulness && !cf_human && !rf_human && !cr_human && !ra_human;
  }
};

// Fully coupled: when any of the three axes is present, all must be.
struct ClinicianLabels {
  Harmfulness harmfulness = Harmfulness::Unharmful;
  Helpfulness helpfulness = Helpfulness::Helpful;
  Inappropriateness inappropriateness = Inappropriateness::No;
};

struct Record {
  QacTriplet triplet;
  std::optional<HumanRatings> human_ratings;
  std::optional<ClinicianLabels> clinician_labels;
};

struct LoadResult {
  std::vector<Record> records;
  std::vector<std::string> warnings;
};

inline constexpr int kSchemaVersion = 1;

// Line-delimited JSON, one record per line. Strict mode rejects unknown
// fields; lenient mode downgrades them to warnings.
LoadResult load_dataset(const std::string& path, DatasetSchema schema,
                        bool strict = true);
LoadResult parse_dataset(const std::string& jsonl_text, DatasetSchema schema,
                         bool strict = true, const std::string& origin = "<memory>");

nlohmann::json record_to_json(const Record& record);
Record record_from_json(const nlohmann::json& j, DatasetSchema schema,
                        bool strict, std::vector<std::string>* warnings);
void write_dataset(const std::string& path, const std::vector<Record>& records);

struct DatasetSplit {
  std::vector<std::string> train;
  std::vector<std::string> val;
  std::vector<std::string> test;
  std::uint64_t seed = 0;
};

// test = 17.5% of total (half-up), val = 21% of the remainder (half-up),
// train = the rest. Without explicit test ids the test draw is stratified
// on (scope, harmfulness when present); with them, the remainder is still
// split 79/21.
DatasetSplit split_dataset(const std::vector<Record>& records,
                           const std::vector<std::string>& explicit_test_ids,
                           std::uint64_t seed);
DatasetSplit split_dataset(const std::vector<Record>& records, std::uint64_t seed);

nlohmann::json split_to_json(const DatasetSplit& split);
DatasetSplit split_from_json(const nlohmann::json& j);

}  // namespace astrid::dataset
