#pragma once

#include <string>

#include <json.hpp>

#include "aroc/estimator.hpp"

namespace aroc {

// Versioned JSON persistence. Doubles are serialized as shortest
// round-trip decimals, so save/load is bit-exact.

nlohmann::json network_to_json(const MLPNetwork& net);
MLPNetwork network_from_json(const nlohmann::json& j);

nlohmann::json forest_to_json(const Forest& forest);
Forest forest_from_json(const nlohmann::json& j);

nlohmann::json group_model_to_json(const GroupModel& model);
GroupModel group_model_from_json(const nlohmann::json& j);

nlohmann::json mlp_config_to_json(const MLPConfig& config);
MLPConfig mlp_config_from_json(const nlohmann::json& j);

nlohmann::json forest_config_to_json(const ForestConfig& config);
ForestConfig forest_config_from_json(const nlohmann::json& j);

/// Serializes the full bundle; `extra` (fit reports, CV summaries) is stored
/// verbatim under "fit_report".
nlohmann::json aroc_model_to_json(const AROCModel& model,
                                  const nlohmann::json& extra = nlohmann::json());
AROCModel aroc_model_from_json(const nlohmann::json& j);

void save_aroc_model(const AROCModel& model, const std::string& path,
                     const nlohmann::json& extra = nlohmann::json());
AROCModel load_aroc_model(const std::string& path, nlohmann::json* document = nullptr);

}  // namespace aroc
