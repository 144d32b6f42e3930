#pragma once

#include <string>

#include <json.hpp>

#include "ufg/eval_agents.hpp"
#include "ufg/evo_engine.hpp"
#include "ufg/features.hpp"
#include "ufg/intent_agent.hpp"
#include "ufg/map_model.hpp"

namespace ufg {

inline constexpr const char* kLevelFormatVersion = "ufg-level/1";

/// Level export document. `meta` is stored verbatim under "meta".
[[nodiscard]] nlohmann::json level_to_json(const MapLayout& layout, nlohmann::json meta = nlohmann::json::object());
/// Parses and validates a level document. Throws EncodingError.
[[nodiscard]] MapLayout level_from_json(const nlohmann::json& doc);

[[nodiscard]] nlohmann::json to_json(const FeatureVector& f);
[[nodiscard]] nlohmann::json to_json(const PlayabilityReport& r);
[[nodiscard]] nlohmann::json to_json(const DecisionTree& tree);
[[nodiscard]] DecisionTree tree_from_json(const nlohmann::json& doc);

[[nodiscard]] nlohmann::json to_json(const GaParams& p);
[[nodiscard]] nlohmann::json to_json(const AgentPolicy& p);
/// Missing fields keep their defaults; result is validated (ConfigError).
[[nodiscard]] GaParams ga_params_from_json(const nlohmann::json& doc);
[[nodiscard]] AgentPolicy agent_policy_from_json(const nlohmann::json& doc);

/// Deterministic serialization; identical inputs give identical bytes.
[[nodiscard]] std::string dump_stable(const nlohmann::json& doc);

}  // namespace ufg
