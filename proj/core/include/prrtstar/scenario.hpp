#pragma once

#include <optional>
#include <string>
#include <vector>

#include "prrtstar/geometry.hpp"
#include "prrtstar/planner.hpp"

namespace prrtstar {

/// Parse or validation failure while reading a scenario document. Parse
/// errors carry line/column; semantic errors name the violated field.
struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Optional per-scenario planner overrides; only keys present in the
/// document are set, and saving writes back exactly the present keys.
struct ScenarioDefaults {
    std::optional<double> gamma;
    std::optional<double> goal_bias;
    std::optional<std::uint64_t> max_iters;
    std::optional<std::uint64_t> rgd_k;
    std::optional<double> rgd_lambda;
    std::optional<double> rgd_d_obs_star;
    std::optional<std::string> steering;  // "holonomic" | "differential_drive"
    std::optional<double> start_theta;
    std::optional<double> drive_v_max;
    std::optional<double> drive_w_max;
    std::optional<double> drive_dt;
    std::optional<double> drive_duration;
    std::optional<std::uint64_t> drive_control_grid;

    bool empty() const;
};

struct Scenario {
    std::string name;
    std::size_t dimension = 0;
    Environment env;
    ScenarioDefaults defaults;

    /// Fold the scenario's defaults into a planner config (config fields not
    /// covered by the document are left untouched).
    void apply_defaults(PlannerConfig& cfg) const;
};

Scenario load_scenario_text(const std::string& text);
Scenario load_scenario_file(const std::string& path);

/// Canonical serialization: fixed field order, two-space indent, floats at 17
/// significant digits. load(save(s)) is bit-identical to save(s).
std::string save_scenario(const Scenario& s);
void save_scenario_file(const Scenario& s, const std::string& path);

/// Hand-designed analogs of the benchmark environments. Throws ScenarioError
/// for unknown names.
Scenario builtin_scenario(const std::string& name);

const std::vector<std::string>& builtin_scenario_names();

}  // namespace prrtstar
