#pragma once

#include <string>

#include "pathmec/simulation.hpp"

namespace pathmec {

struct OutputOptions {
    bool svg = false;
};

/// A scenario document resolved against the benchmark defaults.
/// t_max_explicit records whether the document pinned t_max itself; when it
/// did not, t_max follows the path (1.2 * L / v) even after a path override.
struct LoadedScenario {
    ScenarioConfig config;
    OutputOptions output;
    bool t_max_explicit = false;
};

/// Scenario with every field at its benchmark default.
LoadedScenario default_scenario(BuiltinPath id = BuiltinPath::Path1);

/// Parse a scenario document. Parsing is strict: unknown keys are rejected
/// with the offending key named, and every value is validated against its
/// owning type's invariants. Throws ConfigError.
LoadedScenario parse_scenario(const std::string& json_text);

/// Read and parse a scenario file. Throws ConfigError on invalid content
/// and std::ios_base::failure when the file cannot be read.
LoadedScenario load_scenario_file(const std::string& file_path);

/// Parse just a path object ({"builtin": n} or {"segments": [...],
/// "origin": {...}}), as accepted by the scenario document's path section.
TargetPath parse_path_json(const std::string& json_text, std::optional<int>* builtin_id = nullptr);

/// Fully resolved scenario echo, defaults included: feeding the returned
/// document back through parse_scenario reproduces the identical run.
std::string scenario_echo_json(const ScenarioConfig& config, const OutputOptions& output);

const char* to_string(ControlMode mode);

} // namespace pathmec
