#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "botma/harness.hpp"
#include "botma/kinematics.hpp"

namespace botma {

/**
 * File formats. Scenarios and experiment configs are JSON; the schema is
 * documented in the README. The twelve built-in trial presets pair the
 * published ground-truth rows with the project's default engagement
 * geometry (observer from the origin, two 600 s legs at courses 0 and 90
 * degrees, 5 m/s, dt 10 s, 121 samples, initial bearing 0).
 */

nlohmann::json scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const nlohmann::json& j);

Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& s, const std::string& path);

/// Names of the built-in presets: trial01 .. trial12.
std::vector<std::string> preset_names();

/// Throws std::invalid_argument for an unknown name.
Scenario preset(const std::string& name);

GaConfig ga_config_from_json(const nlohmann::json& j);
CmaConfig cma_config_from_json(const nlohmann::json& j);
GridSpec grid_spec_from_json(const nlohmann::json& j);

nlohmann::json ga_config_to_json(const GaConfig& cfg);
nlohmann::json cma_config_to_json(const CmaConfig& cfg);
nlohmann::json grid_spec_to_json(const GridSpec& spec);

/// Build a solver spec from an experiment config document: picks the section
/// named by `kind` ("ga" | "cma" | "grid"), or defaults when absent.
SolverSpec solver_spec_from_json(const std::string& kind, const nlohmann::json& doc);

} // namespace botma
