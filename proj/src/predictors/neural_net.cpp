#include "astrid/predictors/neural_net.hpp"

#include <algorithm>
#include <cmath>

#include "astrid/error.hpp"
#include "astrid/util.hpp"

namespace astrid::predictors {

std::vector<double> softmax(const std::vector<double>& logits) {
  double max_logit = *std::max_element(logits.begin(), logits.end());
  std::vector<double> out(logits.size());
  double total = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] - max_logit);
    total += out[i];
  }
  for (double& v : out) v /= total;
  return out;
}

namespace {

std::vector<double> relu(std::vector<double> v) {
  for (double& x : v) x = x > 0.0 ? x : 0.0;
  return v;
}

}  // namespace

NeuralNet::NeuralNet(int n_inputs, int hidden, int n_classes, std::uint64_t seed)
    : n_inputs_(n_inputs), hidden_(hidden), n_classes_(n_classes) {
  std::mt19937_64 rng = util::seeded_rng(seed);
  auto init_layer = [&](int n_out, int n_in) {
    Layer layer;
    double bound = std::sqrt(6.0 / static_cast<double>(n_in + n_out));
    layer.w.assign(n_out, std::vector<double>(n_in, 0.0));
    layer.b.assign(n_out, 0.0);
    for (auto& row : layer.w) {
      for (double& w : row) w = (2.0 * util::uniform01(rng) - 1.0) * bound;
    }
    return layer;
  };
  l1_ = init_layer(hidden_, n_inputs_);
  l2_ = init_layer(hidden_, hidden_);
  l3_ = init_layer(n_classes_, hidden_);
}

std::vector<double> NeuralNet::affine(const Layer& layer,
                                      const std::vector<double>& in) const {
  std::vector<double> out(layer.b);
  for (std::size_t o = 0; o < layer.w.size(); ++o) {
    const std::vector<double>& row = layer.w[o];
    double sum = 0.0;
    for (std::size_t i = 0; i < row.size(); ++i) sum += row[i] * in[i];
    out[o] += sum;
  }
  return out;
}

std::vector<double> NeuralNet::forward(const std::vector<double>& x) const {
  std::vector<double> a1 = relu(affine(l1_, x));
  std::vector<double> a2 = relu(affine(l2_, a1));
  return softmax(affine(l3_, a2));
}

int NeuralNet::predict(const std::vector<double>& x) const {
  std::vector<double> probs = forward(x);
  int best = 0;
  for (std::size_t c = 1; c < probs.size(); ++c) {
    if (probs[c] > probs[best]) best = static_cast<int>(c);
  }
  return best;
}

double NeuralNet::loss(const Matrix& X, const std::vector<int>& y) const {
  if (X.empty() || X.size() != y.size()) throw DataError("neural_net: bad batch");
  double total = 0.0;
  for (std::size_t i = 0; i < X.size(); ++i) {
    std::vector<double> probs = forward(X[i]);
    total += -std::log(std::max(probs[y[i]], 1e-300));
  }
  return total / static_cast<double>(X.size());
}

std::vector<double> NeuralNet::gradient(const Matrix& X, const std::vector<int>& y) const {
  if (X.empty() || X.size() != y.size()) throw DataError("neural_net: bad batch");
  Layer g1, g2, g3;
  auto zero_like = [](const Layer& layer) {
    Layer g;
    g.w.assign(layer.w.size(), std::vector<double>(layer.w[0].size(), 0.0));
    g.b.assign(layer.b.size(), 0.0);
    return g;
  };
  g1 = zero_like(l1_);
  g2 = zero_like(l2_);
  g3 = zero_like(l3_);
  const double inv_n = 1.0 / static_cast<double>(X.size());

  for (std::size_t s = 0; s < X.size(); ++s) {
    const std::vector<double>& x = X[s];
    std::vector<double> z1 = affine(l1_, x);
    std::vector<double> a1 = relu(z1);
    std::vector<double> z2 = affine(l2_, a1);
    std::vector<double> a2 = relu(z2);
    std::vector<double> probs = softmax(affine(l3_, a2));

    // dL/dz3 = p - onehot(y)
    std::vector<double> d3 = probs;
    d3[y[s]] -= 1.0;
    for (double& v : d3) v *= inv_n;

    std::vector<double> d2(hidden_, 0.0);
    for (int o = 0; o < n_classes_; ++o) {
      for (int i = 0; i < hidden_; ++i) {
        g3.w[o][i] += d3[o] * a2[i];
        d2[i] += l3_.w[o][i] * d3[o];
      }
      g3.b[o] += d3[o];
    }
    for (int i = 0; i < hidden_; ++i) {
      if (z2[i] <= 0.0) d2[i] = 0.0;
    }

    std::vector<double> d1(hidden_, 0.0);
    for (int o = 0; o < hidden_; ++o) {
      for (int i = 0; i < hidden_; ++i) {
        g2.w[o][i] += d2[o] * a1[i];
        d1[i] += l2_.w[o][i] * d2[o];
      }
      g2.b[o] += d2[o];
    }
    for (int i = 0; i < hidden_; ++i) {
      if (z1[i] <= 0.0) d1[i] = 0.0;
    }

    for (int o = 0; o < hidden_; ++o) {
      for (int i = 0; i < n_inputs_; ++i) {
        g1.w[o][i] += d1[o] * x[i];
      }
      g1.b[o] += d1[o];
    }
  }

  std::vector<double> flat;
  flat.reserve(parameter_count());
  for (const Layer* g : {&g1, &g2, &g3}) {
    for (const auto& row : g->w) flat.insert(flat.end(), row.begin(), row.end());
    flat.insert(flat.end(), g->b.begin(), g->b.end());
  }
  return flat;
}

std::vector<double> NeuralNet::parameters() const {
  std::vector<double> flat;
  flat.reserve(parameter_count());
  for (const Layer* layer : {&l1_, &l2_, &l3_}) {
    for (const auto& row : layer->w) flat.insert(flat.end(), row.begin(), row.end());
    flat.insert(flat.end(), layer->b.begin(), layer->b.end());
  }
  return flat;
}

void NeuralNet::set_parameters(const std::vector<double>& flat) {
  if (flat.size() != parameter_count()) {
    throw InternalError("neural_net: parameter vector size mismatch");
  }
  std::size_t pos = 0;
  for (Layer* layer : {&l1_, &l2_, &l3_}) {
    for (auto& row : layer->w) {
      for (double& w : row) w = flat[pos++];
    }
    for (double& b : layer->b) b = flat[pos++];
  }
}

std::size_t NeuralNet::parameter_count() const {
  auto count = [](const Layer& layer) {
    return layer.w.size() * layer.w[0].size() + layer.b.size();
  };
  return count(l1_) + count(l2_) + count(l3_);
}

void NeuralNet::train(const Matrix& X, const std::vector<int>& y, int epochs, double lr) {
  constexpr double kBeta1 = 0.9, kBeta2 = 0.999, kEps = 1e-8;
  std::vector<double> params = parameters();
  std::vector<double> m(params.size(), 0.0), v(params.size(), 0.0);
  loss_curve_.clear();
  loss_curve_.reserve(epochs);

  for (int epoch = 1; epoch <= epochs; ++epoch) {
    std::vector<double> grad = gradient(X, y);
    double bc1 = 1.0 - std::pow(kBeta1, epoch);
    double bc2 = 1.0 - std::pow(kBeta2, epoch);
    for (std::size_t i = 0; i < params.size(); ++i) {
      m[i] = kBeta1 * m[i] + (1.0 - kBeta1) * grad[i];
      v[i] = kBeta2 * v[i] + (1.0 - kBeta2) * grad[i] * grad[i];
      double m_hat = m[i] / bc1;
      double v_hat = v[i] / bc2;
      params[i] -= lr * m_hat / (std::sqrt(v_hat) + kEps);
    }
    set_parameters(params);
    loss_curve_.push_back(loss(X, y));
  }
}

nlohmann::json NeuralNet::params_to_json() const {
  auto layer_json = [](const Layer& layer) {
    return nlohmann::json{{"w", layer.w}, {"b", layer.b}};
  };
  return {{"n_inputs", n_inputs_},
          {"hidden", hidden_},
          {"n_classes", n_classes_},
          {"l1", layer_json(l1_)},
          {"l2", layer_json(l2_)},
          {"l3", layer_json(l3_)},
          {"loss_curve", loss_curve_}};
}

NeuralNet NeuralNet::from_json(const nlohmann::json& j) {
  NeuralNet net;
  net.n_inputs_ = j.at("n_inputs").get<int>();
  net.hidden_ = j.at("hidden").get<int>();
  net.n_classes_ = j.at("n_classes").get<int>();
  auto load_layer = [](const nlohmann::json& lj) {
    Layer layer;
    layer.w = lj.at("w").get<Matrix>();
    layer.b = lj.at("b").get<std::vector<double>>();
    return layer;
  };
  net.l1_ = load_layer(j.at("l1"));
  net.l2_ = load_layer(j.at("l2"));
  net.l3_ = load_layer(j.at("l3"));
  if (j.contains("loss_curve")) {
    net.loss_curve_ = j.at("loss_curve").get<std::vector<double>>();
  }
  return net;
}

}  // namespace astrid::predictors
