#pragma once

#include <string>
#include <vector>

#include "astrid/dataset.hpp"
#include "astrid/metrics.hpp"

namespace astrid::predictors {

using Matrix = std::vector<std::vector<double>>;

enum class Axis { Harmfulness, Helpfulness, Inappropriateness };

std::string to_string(Axis axis);
Axis axis_from_string(const std::string& name);

// Class lists in canonical reporting order.
std::vector<std::string> axis_classes(Axis axis);
std::string axis_label(Axis axis, const dataset::ClinicianLabels& labels);

// Feature rows are [cf, cr, ra, scope] with scope == 1 for in-scope.
// Undefined CF encodes as 1.0 with the row id flagged (a correct refusal
// asserts nothing unfaithful); rows missing any feature are rejected.
struct FeatureSet {
  Matrix rows;
  std::vector<int> labels;  // index into classes
  std::vector<std::string> classes;
  std::vector<std::string> ids;
  std::vector<std::string> flagged_ids;
};

// Features from the human triad ratings carried by the records. cf_human
// may be absent on rows rated as refusals (ra_human true): these take the
// undefined-CF encoding.
FeatureSet build_features(const std::vector<dataset::Record>& records, Axis axis);

// Features from computed triad results, joined to the records by id.
FeatureSet build_features(const std::vector<dataset::Record>& records,
                          const std::vector<metrics::TriadResult>& results, Axis axis);

FeatureSet subset_by_ids(const FeatureSet& features, const std::vector<std::string>& ids);

}  // namespace astrid::predictors
