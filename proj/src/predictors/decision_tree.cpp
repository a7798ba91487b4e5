#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "astrid/error.hpp"
#include "astrid/predictors/random_forest.hpp"

namespace astrid::predictors {

namespace {

double gini(const std::vector<int>& counts, int total) {
  if (total == 0) return 0.0;
  double sum_sq = 0.0;
  for (int c : counts) {
    double p = static_cast<double>(c) / static_cast<double>(total);
    sum_sq += p * p;
  }
  return 1.0 - sum_sq;
}

int majority_class(const std::vector<int>& counts) {
  int best = 0;
  for (std::size_t c = 1; c < counts.size(); ++c) {
    if (counts[c] > counts[best]) best = static_cast<int>(c);
  }
  return best;
}

struct Split {
  int feature = -1;
  double threshold = 0.0;
  double impurity = std::numeric_limits<double>::infinity();
};

Split best_split(const Matrix& X, const std::vector<int>& y, int n_classes,
                 const RfParams& params, const std::vector<std::size_t>& indices) {
  const std::size_t n = indices.size();
  const std::size_t n_features = X[indices[0]].size();
  Split best;

  std::vector<std::size_t> sorted(indices);
  for (std::size_t f = 0; f < n_features; ++f) {
    std::stable_sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) {
      return X[a][f] < X[b][f];
    });

    std::vector<int> left_counts(n_classes, 0);
    std::vector<int> right_counts(n_classes, 0);
    for (std::size_t i : sorted) right_counts[y[i]] += 1;

    for (std::size_t i = 0; i + 1 < n; ++i) {
      left_counts[y[sorted[i]]] += 1;
      right_counts[y[sorted[i]]] -= 1;
      double v = X[sorted[i]][f];
      double next = X[sorted[i + 1]][f];
      if (v == next) continue;  // threshold only between distinct values
      int n_left = static_cast<int>(i + 1);
      int n_right = static_cast<int>(n - i - 1);
      if (n_left < params.min_samples_leaf || n_right < params.min_samples_leaf) continue;
      double weighted = (n_left * gini(left_counts, n_left) +
                         n_right * gini(right_counts, n_right)) /
                        static_cast<double>(n);
      if (weighted < best.impurity) {
        best.feature = static_cast<int>(f);
        best.threshold = v + (next - v) / 2.0;
        best.impurity = weighted;
      }
    }
  }
  return best;
}

}  // namespace

int DecisionTree::build(const Matrix& X, const std::vector<int>& y, int n_classes,
                        const RfParams& params, std::vector<std::size_t>& indices,
                        int depth) {
  std::vector<int> counts(n_classes, 0);
  for (std::size_t i : indices) counts[y[i]] += 1;

  auto make_leaf = [&]() {
    Node leaf;
    leaf.leaf_class = majority_class(counts);
    nodes_.push_back(leaf);
    return static_cast<int>(nodes_.size() - 1);
  };

  bool pure = std::count_if(counts.begin(), counts.end(), [](int c) { return c > 0; }) <= 1;
  bool too_small = static_cast<int>(indices.size()) < params.min_samples_split;
  bool too_deep = params.max_depth && depth >= *params.max_depth;
  if (pure || too_small || too_deep) return make_leaf();

  Split split = best_split(X, y, n_classes, params, indices);
  if (split.feature < 0) return make_leaf();  // all features constant

  std::vector<std::size_t> left_idx, right_idx;
  for (std::size_t i : indices) {
    (X[i][split.feature] <= split.threshold ? left_idx : right_idx).push_back(i);
  }
  if (left_idx.empty() || right_idx.empty()) return make_leaf();

  Node node;
  node.feature = split.feature;
  node.threshold = split.threshold;
  nodes_.push_back(node);
  int self = static_cast<int>(nodes_.size() - 1);
  indices.clear();
  indices.shrink_to_fit();

  int left = build(X, y, n_classes, params, left_idx, depth + 1);
  int right = build(X, y, n_classes, params, right_idx, depth + 1);
  nodes_[self].left = left;
  nodes_[self].right = right;
  return self;
}

void DecisionTree::fit(const Matrix& X, const std::vector<int>& y, int n_classes,
                       const RfParams& params,
                       const std::vector<std::size_t>& sample_indices) {
  if (sample_indices.empty()) throw DataError("decision_tree: empty sample");
  nodes_.clear();
  std::vector<std::size_t> indices(sample_indices);
  build(X, y, n_classes, params, indices, 0);
}

int DecisionTree::predict(const std::vector<double>& x) const {
  int node = 0;
  while (nodes_[node].feature >= 0) {
    node = x[nodes_[node].feature] <= nodes_[node].threshold ? nodes_[node].left
                                                             : nodes_[node].right;
  }
  return nodes_[node].leaf_class;
}

nlohmann::json DecisionTree::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const Node& n : nodes_) {
    arr.push_back({{"f", n.feature},
                   {"t", n.threshold},
                   {"l", n.left},
                   {"r", n.right},
                   {"c", n.leaf_class}});
  }
  return arr;
}

DecisionTree DecisionTree::from_json(const nlohmann::json& j) {
  DecisionTree tree;
  for (const auto& item : j) {
    Node n;
    n.feature = item.at("f").get<int>();
    n.threshold = item.at("t").get<double>();
    n.left = item.at("l").get<int>();
    n.right = item.at("r").get<int>();
    n.leaf_class = item.at("c").get<int>();
    tree.nodes_.push_back(n);
  }
  return tree;
}

}  // namespace astrid::predictors
