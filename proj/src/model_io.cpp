#include "aroc/model_io.hpp"

#include <fstream>
#include <stdexcept>

#include "aroc/csv.hpp"

namespace aroc {

namespace {

constexpr int kBundleVersion = 1;

void require(bool cond, const char* what) {
  if (!cond) throw std::runtime_error(std::string("model bundle: ") + what);
}

}  // namespace

nlohmann::json network_to_json(const MLPNetwork& net) {
  return {{"type", "mlp"},
          {"input_dim", net.input_dim},
          {"layer_widths", net.layer_widths},
          {"output_transform",
           net.output_transform == OutputTransform::softplus ? "softplus" : "identity"},
          {"params", net.params}};
}

MLPNetwork network_from_json(const nlohmann::json& j) {
  require(j.value("type", "") == "mlp", "expected a network object");
  MLPNetwork net;
  net.input_dim = j.at("input_dim").get<std::size_t>();
  net.layer_widths = j.at("layer_widths").get<std::vector<std::size_t>>();
  const std::string transform = j.at("output_transform").get<std::string>();
  require(transform == "identity" || transform == "softplus", "unknown output transform");
  net.output_transform =
      transform == "softplus" ? OutputTransform::softplus : OutputTransform::identity;
  net.params = j.at("params").get<std::vector<double>>();
  require(net.params.size() ==
              MLPNetwork::expected_parameter_count(net.input_dim, net.layer_widths),
          "parameter count does not match the layer shape");
  return net;
}

nlohmann::json forest_to_json(const Forest& forest) {
  nlohmann::json trees = nlohmann::json::array();
  for (const auto& tree : forest.trees) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& node : tree.nodes)
      nodes.push_back({node.feature, node.threshold, node.left, node.right, node.value,
                       node.n_samples});
    trees.push_back(std::move(nodes));
  }
  return {{"type", "forest"},
          {"n_features", forest.n_features},
          {"y_min", forest.y_min},
          {"y_max", forest.y_max},
          {"config", forest_config_to_json(forest.config)},
          {"trees", std::move(trees)}};
}

Forest forest_from_json(const nlohmann::json& j) {
  require(j.value("type", "") == "forest", "expected a forest object");
  Forest forest;
  forest.n_features = j.at("n_features").get<std::size_t>();
  forest.y_min = j.at("y_min").get<double>();
  forest.y_max = j.at("y_max").get<double>();
  forest.config = forest_config_from_json(j.at("config"));
  for (const auto& jt : j.at("trees")) {
    RegressionTree tree;
    for (const auto& jn : jt) {
      require(jn.is_array() && jn.size() == 6, "malformed tree node");
      tree.nodes.push_back(TreeNode{jn[0].get<int>(), jn[1].get<double>(), jn[2].get<int>(),
                                    jn[3].get<int>(), jn[4].get<double>(),
                                    jn[5].get<std::size_t>()});
    }
    require(!tree.nodes.empty(), "empty tree");
    forest.trees.push_back(std::move(tree));
  }
  return forest;
}

nlohmann::json mlp_config_to_json(const MLPConfig& config) {
  return {{"hidden_layers", config.hidden_layers},
          {"dropout_rate", config.dropout_rate},
          {"learning_rate", config.learning_rate},
          {"weight_decay", config.weight_decay},
          {"batch_size", config.batch_size},
          {"max_epochs", config.max_epochs},
          {"patience", config.patience},
          {"seed", config.seed}};
}

MLPConfig mlp_config_from_json(const nlohmann::json& j) {
  MLPConfig config;
  config.hidden_layers = j.at("hidden_layers").get<std::vector<std::size_t>>();
  config.dropout_rate = j.at("dropout_rate").get<double>();
  config.learning_rate = j.at("learning_rate").get<double>();
  config.weight_decay = j.at("weight_decay").get<double>();
  config.batch_size = j.at("batch_size").get<std::size_t>();
  config.max_epochs = j.at("max_epochs").get<std::size_t>();
  config.patience = j.at("patience").get<std::size_t>();
  config.seed = j.at("seed").get<std::uint64_t>();
  return config;
}

nlohmann::json forest_config_to_json(const ForestConfig& config) {
  return {{"n_trees", config.n_trees},
          {"max_depth", config.max_depth},
          {"min_samples_split", config.min_samples_split},
          {"min_samples_leaf", config.min_samples_leaf},
          {"max_features", config.max_features},
          {"seed", config.seed}};
}

ForestConfig forest_config_from_json(const nlohmann::json& j) {
  ForestConfig config;
  config.n_trees = j.at("n_trees").get<std::size_t>();
  config.max_depth = j.at("max_depth").get<std::size_t>();
  config.min_samples_split = j.at("min_samples_split").get<std::size_t>();
  config.min_samples_leaf = j.at("min_samples_leaf").get<std::size_t>();
  config.max_features = j.at("max_features").get<std::size_t>();
  config.seed = j.at("seed").get<std::uint64_t>();
  return config;
}

nlohmann::json group_model_to_json(const GroupModel& model) {
  nlohmann::json j;
  j["kind"] = std::string(kind_name(model.kind));
  j["label"] = model.label;
  j["variance_floor"] = model.variance_floor;
  j["scaler"] = {{"mean", model.scaler.mean}, {"sd", model.scaler.sd}};
  if (model.kind == RegressorKind::fnn) {
    j["mean_model"] = network_to_json(*model.mean_net);
    j["variance_model"] = network_to_json(*model.variance_net);
    j["mean_training"] = {{"epochs_run", model.mean_report.epochs_run},
                          {"best_validation_mse", model.mean_report.best_validation_mse},
                          {"stopped_early", model.mean_report.stopped_early}};
    j["variance_training"] = {{"epochs_run", model.variance_report.epochs_run},
                              {"best_validation_mse", model.variance_report.best_validation_mse},
                              {"stopped_early", model.variance_report.stopped_early}};
  } else {
    j["mean_model"] = forest_to_json(*model.mean_forest);
    j["variance_model"] = forest_to_json(*model.variance_forest);
  }
  return j;
}

GroupModel group_model_from_json(const nlohmann::json& j) {
  GroupModel model;
  model.kind = parse_kind(j.at("kind").get<std::string>());
  model.label = j.at("label").get<int>();
  model.variance_floor = j.at("variance_floor").get<double>();
  model.scaler.mean = j.at("scaler").at("mean").get<std::vector<double>>();
  model.scaler.sd = j.at("scaler").at("sd").get<std::vector<double>>();
  if (model.kind == RegressorKind::fnn) {
    model.mean_net = network_from_json(j.at("mean_model"));
    model.variance_net = network_from_json(j.at("variance_model"));
  } else {
    model.mean_forest = forest_from_json(j.at("mean_model"));
    model.variance_forest = forest_from_json(j.at("variance_model"));
  }
  return model;
}

nlohmann::json aroc_model_to_json(const AROCModel& model, const nlohmann::json& extra) {
  nlohmann::json j;
  j["format"] = "aroc-model-bundle";
  j["version"] = kBundleVersion;
  j["kind"] = std::string(kind_name(model.kind));
  j["schema"] = model.schema;
  j["config"] = {{"mlp", mlp_config_to_json(model.config.mlp)},
                 {"forest", forest_config_to_json(model.config.forest)},
                 {"min_group_size", model.config.min_group_size},
                 {"variance_floor", model.config.variance_floor},
                 {"validation_fraction", model.config.validation_fraction}};
  j["group0"] = group_model_to_json(model.group0);
  j["group1"] = group_model_to_json(model.group1);
  if (!extra.is_null()) j["fit_report"] = extra;
  return j;
}

AROCModel aroc_model_from_json(const nlohmann::json& j) {
  require(j.value("format", "") == "aroc-model-bundle", "unrecognized format field");
  require(j.value("version", -1) == kBundleVersion, "unsupported bundle version");
  AROCModel model;
  model.kind = parse_kind(j.at("kind").get<std::string>());
  model.schema = j.at("schema").get<std::vector<std::string>>();
  const auto& jc = j.at("config");
  model.config.mlp = mlp_config_from_json(jc.at("mlp"));
  model.config.forest = forest_config_from_json(jc.at("forest"));
  model.config.min_group_size = jc.at("min_group_size").get<std::size_t>();
  model.config.variance_floor = jc.at("variance_floor").get<double>();
  model.config.validation_fraction = jc.at("validation_fraction").get<double>();
  model.group0 = group_model_from_json(j.at("group0"));
  model.group1 = group_model_from_json(j.at("group1"));
  return model;
}

void save_aroc_model(const AROCModel& model, const std::string& path,
                     const nlohmann::json& extra) {
  atomic_write_file(path, aroc_model_to_json(model, extra).dump(2) + "\n");
}

AROCModel load_aroc_model(const std::string& path, nlohmann::json* document) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model bundle '" + path + "'");
  nlohmann::json j;
  in >> j;
  if (document != nullptr) *document = j;
  return aroc_model_from_json(j);
}

}  // namespace aroc
