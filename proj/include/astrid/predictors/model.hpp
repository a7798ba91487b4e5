#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "astrid/predictors/features.hpp"
#include "astrid/predictors/gaussian_nb.hpp"
#include "astrid/predictors/neural_net.hpp"
#include "astrid/predictors/random_forest.hpp"
#include "astrid/predictors/svm.hpp"

namespace astrid::predictors {

enum class ModelKind { RandomForest, SvmRbf, GaussianNb, NeuralNet };

inline constexpr ModelKind kAllModelKinds[] = {
    ModelKind::RandomForest, ModelKind::SvmRbf, ModelKind::GaussianNb,
    ModelKind::NeuralNet};

std::string to_string(ModelKind kind);
std::string display_name(ModelKind kind);  // report row label
ModelKind model_kind_from_string(const std::string& name);

// None / bool / integer / real hyperparameter value.
using HyperValue = std::variant<std::monostate, bool, std::int64_t, double>;

std::string hyper_value_to_string(const HyperValue& v);
nlohmann::json hyper_value_to_json(const HyperValue& v);
HyperValue hyper_value_from_json(const nlohmann::json& j);

// Ordered name -> value pairs; order defines grid enumeration order.
struct HyperParams {
  std::vector<std::pair<std::string, HyperValue>> values;

  const HyperValue* find(const std::string& name) const;
  double get_double(const std::string& name, double fallback) const;
  std::int64_t get_int(const std::string& name, std::int64_t fallback) const;
  bool get_bool(const std::string& name, bool fallback) const;
  std::optional<int> get_optional_int(const std::string& name) const;
  void set(const std::string& name, HyperValue v);

  nlohmann::json to_json() const;
  static HyperParams from_json(const nlohmann::json& j);
};

struct TrainedModel {
  ModelKind kind = ModelKind::GaussianNb;
  std::vector<std::string> classes;
  HyperParams hyperparameters;
  std::uint64_t seed = 0;
  std::string split_id;  // provenance of the training split

  std::variant<RandomForest, SvmRbf, GaussianNb, NeuralNet> impl;

  int predict_index(const std::vector<double>& x) const;
  std::string predict(const std::vector<double>& x) const;
  std::vector<std::string> predict(const Matrix& X) const;
};

TrainedModel train_model(ModelKind kind, const Matrix& X, const std::vector<int>& y,
                         const std::vector<std::string>& classes,
                         const HyperParams& params, std::uint64_t seed);

nlohmann::json model_to_json(const TrainedModel& model);
TrainedModel model_from_json(const nlohmann::json& j);
void save_model(const TrainedModel& model, const std::string& path);
TrainedModel load_model(const std::string& path);

}  // namespace astrid::predictors
