#pragma once

#include <cstdint>
#include <vector>

#include "json.hpp"

#include "astrid/predictors/features.hpp"

namespace astrid::predictors {

struct NnParams {
  int hidden = 16;
  int epochs = 500;
  double lr = 1e-2;
};

// input -> hidden -> hidden -> K, ReLU between the affine layers, softmax
// output, mean cross-entropy loss. Trained full-batch with Adam
// (beta1 0.9, beta2 0.999, eps 1e-8). All arithmetic in double; gradients
// are hand-derived (softmax+cross-entropy collapses to p - onehot).
class NeuralNet {
 public:
  NeuralNet() = default;
  NeuralNet(int n_inputs, int hidden, int n_classes, std::uint64_t seed);

  std::vector<double> forward(const std::vector<double>& x) const;  // softmax probs
  int predict(const std::vector<double>& x) const;

  double loss(const Matrix& X, const std::vector<int>& y) const;
  // Flattened analytic gradient of the mean loss over the batch; layout
  // matches parameters().
  std::vector<double> gradient(const Matrix& X, const std::vector<int>& y) const;

  std::vector<double> parameters() const;
  void set_parameters(const std::vector<double>& flat);
  std::size_t parameter_count() const;

  void train(const Matrix& X, const std::vector<int>& y, int epochs, double lr);
  const std::vector<double>& loss_curve() const { return loss_curve_; }

  nlohmann::json params_to_json() const;
  static NeuralNet from_json(const nlohmann::json& j);

 private:
  struct Layer {
    Matrix w;                // [out][in]
    std::vector<double> b;   // [out]
  };

  std::vector<double> affine(const Layer& layer, const std::vector<double>& in) const;

  int n_inputs_ = 0;
  int hidden_ = 16;
  int n_classes_ = 0;
  Layer l1_, l2_, l3_;
  std::vector<double> loss_curve_;
};

std::vector<double> softmax(const std::vector<double>& logits);

}  // namespace astrid::predictors
