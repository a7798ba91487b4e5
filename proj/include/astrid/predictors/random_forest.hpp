#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "json.hpp"

#include "astrid/predictors/features.hpp"

namespace astrid::predictors {

struct RfParams {
  int n_estimators = 100;
  std::optional<int> max_depth;  // nullopt = grow until pure / too small
  int min_samples_split = 2;
  int min_samples_leaf = 1;
  bool bootstrap = true;
};

// CART-style classification tree: Gini impurity, candidate thresholds at
// midpoints of consecutive distinct feature values, all features searched.
class DecisionTree {
 public:
  void fit(const Matrix& X, const std::vector<int>& y, int n_classes,
           const RfParams& params, const std::vector<std::size_t>& sample_indices);
  int predict(const std::vector<double>& x) const;

  nlohmann::json to_json() const;
  static DecisionTree from_json(const nlohmann::json& j);

  struct Node {
    int feature = -1;          // -1 marks a leaf
    double threshold = 0.0;    // go left when x[feature] <= threshold
    int left = -1;
    int right = -1;
    int leaf_class = 0;
  };

  const std::vector<Node>& nodes() const { return nodes_; }

 private:
  int build(const Matrix& X, const std::vector<int>& y, int n_classes,
            const RfParams& params, std::vector<std::size_t>& indices, int depth);

  std::vector<Node> nodes_;
};

// Majority vote over seeded bootstrap trees; ties resolve to the lowest
// class index. Deterministic for a fixed seed.
class RandomForest {
 public:
  void fit(const Matrix& X, const std::vector<int>& y, int n_classes,
           const RfParams& params, std::uint64_t seed);
  int predict(const std::vector<double>& x) const;

  nlohmann::json params_to_json() const;
  static RandomForest from_json(const nlohmann::json& j);

  const std::vector<DecisionTree>& trees() const { return trees_; }

 private:
  std::vector<DecisionTree> trees_;
  int n_classes_ = 0;
};

}  // namespace astrid::predictors
