#include "astrid/predictors/features.hpp"

#include <algorithm>
#include <map>

#include "astrid/error.hpp"
#include "astrid/util.hpp"

namespace astrid::predictors {

std::string to_string(Axis axis) {
  switch (axis) {
    case Axis::Harmfulness: return "harmfulness";
    case Axis::Helpfulness: return "helpfulness";
    case Axis::Inappropriateness: return "inappropriateness";
  }
  return "harmfulness";
}

Axis axis_from_string(const std::string& name) {
  std::string n = util::to_lower(name);
  if (n == "harmfulness") return Axis::Harmfulness;
  if (n == "helpfulness") return Axis::Helpfulness;
  if (n == "inappropriateness") return Axis::Inappropriateness;
  throw ConfigError("unknown axis '" + name +
                    "' (expected harmfulness|helpfulness|inappropriateness)");
}

std::vector<std::string> axis_classes(Axis axis) {
  switch (axis) {
    case Axis::Harmfulness: return {"harmful", "unharmful"};
    case Axis::Helpfulness: return {"helpful", "unhelpful"};
    case Axis::Inappropriateness: return {"yes", "slightly", "no"};
  }
  return {};
}

std::string axis_label(Axis axis, const dataset::ClinicianLabels& labels) {
  switch (axis) {
    case Axis::Harmfulness: return dataset::to_string(labels.harmfulness);
    case Axis::Helpfulness: return dataset::to_string(labels.helpfulness);
    case Axis::Inappropriateness: return dataset::to_string(labels.inappropriateness);
  }
  return "";
}

namespace {

struct TriadView {
  std::optional<double> cf;  // nullopt = undefined
  bool cf_present = false;   // whether the source carried any CF information
  std::optional<bool> cr;
  std::optional<bool> ra;
};

int class_index(const std::vector<std::string>& classes, const std::string& label) {
  auto it = std::find(classes.begin(), classes.end(), label);
  if (it == classes.end()) return -1;
  return static_cast<int>(it - classes.begin());
}

FeatureSet assemble(const std::vector<dataset::Record>& records,
                    const std::map<std::string, TriadView>& views, Axis axis) {
  FeatureSet set;
  set.classes = axis_classes(axis);
  std::vector<std::string> rejected;

  for (const dataset::Record& record : records) {
    const std::string& id = record.triplet.id;
    auto view_it = views.find(id);
    const TriadView* view = view_it == views.end() ? nullptr : &view_it->second;

    std::string missing;
    if (!record.clinician_labels) missing = "clinician_labels";
    else if (view == nullptr || !view->cf_present) missing = "cf";
    else if (!view->cr) missing = "cr";
    else if (!view->ra) missing = "ra";
    else if (!record.triplet.scope) missing = "scope";
    if (!missing.empty()) {
      rejected.push_back(id + " (missing " + missing + ")");
      continue;
    }

    double cf;
    if (view->cf) {
      cf = *view->cf;
    } else {
      cf = 1.0;  // undefined CF: a correct refusal asserts nothing unfaithful
      set.flagged_ids.push_back(id);
    }
    double cr = *view->cr ? 1.0 : 0.0;
    double ra = *view->ra ? 1.0 : 0.0;
    double scope = *record.triplet.scope == dataset::Scope::InScope ? 1.0 : 0.0;

    int label = class_index(set.classes, axis_label(axis, *record.clinician_labels));
    if (label < 0) {
      throw InternalError("axis label outside canonical class list for record " + id);
    }
    set.rows.push_back({cf, cr, ra, scope});
    set.labels.push_back(label);
    set.ids.push_back(id);
  }

  if (!rejected.empty()) {
    std::string msg = "records missing triad features for axis " + to_string(axis) + ": ";
    for (std::size_t i = 0; i < rejected.size(); ++i) {
      if (i > 0) msg += ", ";
      msg += rejected[i];
    }
    throw DataError(msg);
  }
  if (set.rows.empty()) throw DataError("no feature rows built (empty dataset)");
  return set;
}

}  // namespace

FeatureSet build_features(const std::vector<dataset::Record>& records, Axis axis) {
  std::map<std::string, TriadView> views;
  for (const dataset::Record& record : records) {
    if (!record.human_ratings) continue;
    const dataset::HumanRatings& h = *record.human_ratings;
    TriadView view;
    if (h.cf_human) {
      view.cf = h.cf_human;
      view.cf_present = true;
    } else if (h.ra_human && *h.ra_human) {
      view.cf = std::nullopt;  // rated refusal without a CF rating
      view.cf_present = true;
    }
    view.cr = h.cr_human;
    view.ra = h.ra_human;
    views[record.triplet.id] = view;
  }
  return assemble(records, views, axis);
}

FeatureSet build_features(const std::vector<dataset::Record>& records,
                          const std::vector<metrics::TriadResult>& results, Axis axis) {
  std::map<std::string, TriadView> views;
  for (const metrics::TriadResult& result : results) {
    TriadView view;
    view.cf = result.cf.score;
    view.cf_present = true;
    view.cr = result.cr_relevant;
    view.ra = result.ra_refused;
    views[result.id] = view;
  }
  return assemble(records, views, axis);
}

FeatureSet subset_by_ids(const FeatureSet& features, const std::vector<std::string>& ids) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < features.ids.size(); ++i) index[features.ids[i]] = i;
  FeatureSet out;
  out.classes = features.classes;
  for (const std::string& id : ids) {
    auto it = index.find(id);
    if (it == index.end()) continue;
    out.rows.push_back(features.rows[it->second]);
    out.labels.push_back(features.labels[it->second]);
    out.ids.push_back(id);
  }
  for (const std::string& id : features.flagged_ids) {
    if (index.count(id) &&
        std::find(out.ids.begin(), out.ids.end(), id) != out.ids.end()) {
      out.flagged_ids.push_back(id);
    }
  }
  return out;
}

}  // namespace astrid::predictors
