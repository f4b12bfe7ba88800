#pragma once

// JSON mapping for ScenarioConfig, shared by the scenario loader and the
// result-file writer.

#include <json.hpp>

#include "ohres/scenario.hpp"

namespace ohres {

nlohmann::ordered_json scenario_to_json(const ScenarioConfig& scenario);

/// Strict conversion: unknown keys, missing keys and wrong types raise
/// ParseError. Does not run validate().
ScenarioConfig scenario_from_json(const nlohmann::json& doc);

}  // namespace ohres
