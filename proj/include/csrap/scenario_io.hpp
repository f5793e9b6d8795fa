#pragma once

// JSON documents for scenarios and scenario configurations.
//
// Scenario document keys: area, frame {M, T, slot_capacity, rho_ms},
// channel {...}, cameras [{id, x, y, geometry, rate_requirement, rates?,
// slot_rates?, coverage?}], targets [{id, x, y}], seed. A camera's `rates`
// bypass the channel model; `coverage` bypasses the geometry. Indices in
// the document are 1-based.

#include <string>
#include <string_view>

#include "json.hpp"

#include "csrap/scenario.hpp"

namespace csrap {

nlohmann::json scenario_to_json(const Scenario& scenario);
/// Throws ParseError naming the offending field.
Scenario scenario_from_json(const nlohmann::json& doc);

std::string save_scenario(const Scenario& scenario);
Scenario load_scenario(std::string_view text);

nlohmann::json channel_to_json(const ChannelParams& channel);
ChannelParams channel_from_json(const nlohmann::json& doc, const std::string& path);

nlohmann::json config_to_json(const ScenarioConfig& config);
/// Missing keys take the ScenarioConfig defaults.
ScenarioConfig config_from_json(const nlohmann::json& doc);

std::string to_string(Deployment deployment);
Deployment deployment_from_string(const std::string& name);

/// Reads a whole file; throws std::runtime_error when it cannot be opened.
std::string read_file(const std::string& path);
/// Parses JSON text, turning syntax errors into ParseError.
nlohmann::json parse_json(std::string_view text, const std::string& what);

}  // namespace csrap
