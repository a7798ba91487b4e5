#include "astrid/predictors/model.hpp"

#include <fstream>

#include "astrid/error.hpp"
#include "astrid/util.hpp"

namespace astrid::predictors {

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::RandomForest: return "random_forest";
    case ModelKind::SvmRbf: return "svm_rbf";
    case ModelKind::GaussianNb: return "gaussian_nb";
    case ModelKind::NeuralNet: return "neural_net";
  }
  return "gaussian_nb";
}

std::string display_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::RandomForest: return "RandomForest";
    case ModelKind::SvmRbf: return "SVM";
    case ModelKind::GaussianNb: return "Gaussian Naive Bayes";
    case ModelKind::NeuralNet: return "Neural Network";
  }
  return "";
}

ModelKind model_kind_from_string(const std::string& name) {
  for (ModelKind kind : kAllModelKinds) {
    if (to_string(kind) == name) return kind;
  }
  throw ConfigError("unknown model kind '" + name + "'");
}

std::string hyper_value_to_string(const HyperValue& v) {
  if (std::holds_alternative<std::monostate>(v)) return "none";
  if (std::holds_alternative<bool>(v)) return std::get<bool>(v) ? "true" : "false";
  if (std::holds_alternative<std::int64_t>(v)) return std::to_string(std::get<std::int64_t>(v));
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", std::get<double>(v));
  return buf;
}

nlohmann::json hyper_value_to_json(const HyperValue& v) {
  if (std::holds_alternative<std::monostate>(v)) return nullptr;
  if (std::holds_alternative<bool>(v)) return std::get<bool>(v);
  if (std::holds_alternative<std::int64_t>(v)) return std::get<std::int64_t>(v);
  return std::get<double>(v);
}

HyperValue hyper_value_from_json(const nlohmann::json& j) {
  if (j.is_null()) return std::monostate{};
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_float()) return j.get<double>();
  throw DataError("unsupported hyperparameter value: " + j.dump());
}

const HyperValue* HyperParams::find(const std::string& name) const {
  for (const auto& [key, value] : values) {
    if (key == name) return &value;
  }
  return nullptr;
}

double HyperParams::get_double(const std::string& name, double fallback) const {
  const HyperValue* v = find(name);
  if (v == nullptr || std::holds_alternative<std::monostate>(*v)) return fallback;
  if (std::holds_alternative<double>(*v)) return std::get<double>(*v);
  if (std::holds_alternative<std::int64_t>(*v)) {
    return static_cast<double>(std::get<std::int64_t>(*v));
  }
  throw ConfigError("hyperparameter '" + name + "' is not numeric");
}

std::int64_t HyperParams::get_int(const std::string& name, std::int64_t fallback) const {
  const HyperValue* v = find(name);
  if (v == nullptr || std::holds_alternative<std::monostate>(*v)) return fallback;
  if (std::holds_alternative<std::int64_t>(*v)) return std::get<std::int64_t>(*v);
  throw ConfigError("hyperparameter '" + name + "' is not an integer");
}

bool HyperParams::get_bool(const std::string& name, bool fallback) const {
  const HyperValue* v = find(name);
  if (v == nullptr || std::holds_alternative<std::monostate>(*v)) return fallback;
  if (std::holds_alternative<bool>(*v)) return std::get<bool>(*v);
  throw ConfigError("hyperparameter '" + name + "' is not a boolean");
}

std::optional<int> HyperParams::get_optional_int(const std::string& name) const {
  const HyperValue* v = find(name);
  if (v == nullptr || std::holds_alternative<std::monostate>(*v)) return std::nullopt;
  if (std::holds_alternative<std::int64_t>(*v)) {
    return static_cast<int>(std::get<std::int64_t>(*v));
  }
  throw ConfigError("hyperparameter '" + name + "' is not an integer");
}

void HyperParams::set(const std::string& name, HyperValue v) {
  for (auto& [key, value] : values) {
    if (key == name) {
      value = std::move(v);
      return;
    }
  }
  values.push_back({name, std::move(v)});
}

nlohmann::json HyperParams::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [key, value] : values) {
    arr.push_back({{"name", key}, {"value", hyper_value_to_json(value)}});
  }
  return arr;
}

HyperParams HyperParams::from_json(const nlohmann::json& j) {
  HyperParams params;
  for (const auto& item : j) {
    params.values.push_back(
        {item.at("name").get<std::string>(), hyper_value_from_json(item.at("value"))});
  }
  return params;
}

int TrainedModel::predict_index(const std::vector<double>& x) const {
  return std::visit([&](const auto& model) { return model.predict(x); }, impl);
}

std::string TrainedModel::predict(const std::vector<double>& x) const {
  int index = predict_index(x);
  if (index < 0 || index >= static_cast<int>(classes.size())) {
    throw InternalError("model predicted class index out of range");
  }
  return classes[index];
}

std::vector<std::string> TrainedModel::predict(const Matrix& X) const {
  std::vector<std::string> out;
  out.reserve(X.size());
  for (const auto& row : X) out.push_back(predict(row));
  return out;
}

TrainedModel train_model(ModelKind kind, const Matrix& X, const std::vector<int>& y,
                         const std::vector<std::string>& classes,
                         const HyperParams& params, std::uint64_t seed) {
  if (X.empty() || X.size() != y.size()) {
    throw DataError("train_model: empty or mismatched training data");
  }
  TrainedModel model;
  model.kind = kind;
  model.classes = classes;
  model.hyperparameters = params;
  model.seed = seed;
  const int n_classes = static_cast<int>(classes.size());

  switch (kind) {
    case ModelKind::RandomForest: {
      RfParams rf;
      rf.n_estimators = static_cast<int>(params.get_int("n_estimators", 100));
      rf.max_depth = params.get_optional_int("max_depth");
      rf.min_samples_split = static_cast<int>(params.get_int("min_samples_split", 2));
      rf.min_samples_leaf = static_cast<int>(params.get_int("min_samples_leaf", 1));
      rf.bootstrap = params.get_bool("bootstrap", true);
      RandomForest forest;
      forest.fit(X, y, n_classes, rf, seed);
      model.impl = std::move(forest);
      break;
    }
    case ModelKind::SvmRbf: {
      SvmParams sp;
      sp.C = params.get_double("C", 10.0);
      sp.gamma = params.get_double("gamma", 0.1);
      SvmRbf svm;
      svm.fit(X, y, n_classes, sp, seed);
      model.impl = std::move(svm);
      break;
    }
    case ModelKind::GaussianNb: {
      GaussianNb nb;
      nb.fit(X, y, n_classes);
      model.impl = std::move(nb);
      break;
    }
    case ModelKind::NeuralNet: {
      NnParams np;
      np.hidden = static_cast<int>(params.get_int("hidden", 16));
      np.epochs = static_cast<int>(params.get_int("epochs", 500));
      np.lr = params.get_double("lr", 1e-2);
      NeuralNet net(static_cast<int>(X[0].size()), np.hidden, n_classes, seed);
      net.train(X, y, np.epochs, np.lr);
      model.impl = std::move(net);
      break;
    }
  }
  return model;
}

nlohmann::json model_to_json(const TrainedModel& model) {
  nlohmann::json params = std::visit(
      [](const auto& impl) { return impl.params_to_json(); }, model.impl);
  return {{"schema_version", 1},
          {"kind", to_string(model.kind)},
          {"classes", model.classes},
          {"hyperparameters", model.hyperparameters.to_json()},
          {"parameters", params},
          {"metadata", {{"seed", model.seed}, {"split_id", model.split_id}}}};
}

TrainedModel model_from_json(const nlohmann::json& j) {
  int version = j.value("schema_version", 0);
  if (version != 1) {
    throw DataError("unsupported model schema_version " + std::to_string(version));
  }
  TrainedModel model;
  model.kind = model_kind_from_string(j.at("kind").get<std::string>());
  model.classes = j.at("classes").get<std::vector<std::string>>();
  model.hyperparameters = HyperParams::from_json(j.at("hyperparameters"));
  if (j.contains("metadata")) {
    model.seed = j.at("metadata").value("seed", 0ULL);
    model.split_id = j.at("metadata").value("split_id", "");
  }
  const nlohmann::json& params = j.at("parameters");
  switch (model.kind) {
    case ModelKind::RandomForest: model.impl = RandomForest::from_json(params); break;
    case ModelKind::SvmRbf: model.impl = SvmRbf::from_json(params); break;
    case ModelKind::GaussianNb: model.impl = GaussianNb::from_json(params); break;
    case ModelKind::NeuralNet: model.impl = NeuralNet::from_json(params); break;
  }
  return model;
}

void save_model(const TrainedModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write model file: " + path);
  out << model_to_json(model).dump(2) << "\n";
}

TrainedModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open model file: " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError("model file " + path + " is not valid JSON: " + e.what());
  }
  return model_from_json(j);
}

}  // namespace astrid::predictors
