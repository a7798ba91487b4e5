#include "astrid/predictors/random_forest.hpp"

#include <numeric>

#include "astrid/error.hpp"
#include "astrid/util.hpp"

namespace astrid::predictors {

void RandomForest::fit(const Matrix& X, const std::vector<int>& y, int n_classes,
                       const RfParams& params, std::uint64_t seed) {
  if (X.empty() || X.size() != y.size()) {
    throw DataError("random_forest: empty or mismatched training data");
  }
  trees_.clear();
  n_classes_ = n_classes;
  const std::size_t n = X.size();

  for (int t = 0; t < params.n_estimators; ++t) {
    std::vector<std::size_t> sample;
    if (params.bootstrap) {
      std::mt19937_64 rng = util::seeded_rng(seed, static_cast<std::uint64_t>(t));
      sample.reserve(n);
      for (std::size_t i = 0; i < n; ++i) {
        sample.push_back(static_cast<std::size_t>(util::bounded(rng, n)));
      }
    } else {
      sample.resize(n);
      std::iota(sample.begin(), sample.end(), 0);
    }
    DecisionTree tree;
    tree.fit(X, y, n_classes, params, sample);
    trees_.push_back(std::move(tree));
  }
}

int RandomForest::predict(const std::vector<double>& x) const {
  std::vector<int> votes(n_classes_, 0);
  for (const DecisionTree& tree : trees_) votes[tree.predict(x)] += 1;
  int best = 0;
  for (int c = 1; c < n_classes_; ++c) {
    if (votes[c] > votes[best]) best = c;
  }
  return best;
}

nlohmann::json RandomForest::params_to_json() const {
  nlohmann::json trees = nlohmann::json::array();
  for (const DecisionTree& tree : trees_) trees.push_back(tree.to_json());
  return {{"n_classes", n_classes_}, {"trees", trees}};
}

RandomForest RandomForest::from_json(const nlohmann::json& j) {
  RandomForest forest;
  forest.n_classes_ = j.at("n_classes").get<int>();
  for (const auto& tree_json : j.at("trees")) {
    forest.trees_.push_back(DecisionTree::from_json(tree_json));
  }
  return forest;
}

}  // namespace astrid::predictors
