#pragma once

#include <filesystem>
#include <string_view>

#include "hotspot/solver.hpp"

namespace hotspot {

struct OutputSettings {
    std::filesystem::path dir = "hotspot_out";
    bool snapshots = true;
    bool diagnostics = true;
};

/// Parsed simulation config file:
///
/// {
///   "model":    {"kind": "main" | "short", "eta", "psi", "omega", "atilde", "chi"}
///               (short: "eta", "a0", "abar", "chi"),
///   "grid":     {"L", "n"},
///   "time":     {"t_end", "dt_init", "dt_min", "output_every"},
///   "ic":       {"recipe": "constants", "a0", "n0"}
///             | {"recipe": "perturbed_steady", "amplitude", "mode_j", "mode_k", "n_amplitude"}
///             | {"recipe": "file", "path_A", "path_N"},
///   "numerics": {"flux_scheme": "centered" | "upwind", "cfl", "guard_tol", "dt_max", "a_floor",
///                "energy_residuals"},
///   "outputs":  {"dir", "snapshots", "diagnostics"}
/// }
///
/// Unknown keys are rejected; missing keys keep the defaults of SimConfig / OutputSettings.
struct RunConfigFile {
    SimConfig sim;
    OutputSettings outputs;
};

/// `base_dir` resolves relative IC file paths. Throws InvalidConfig.
RunConfigFile parse_run_config(std::string_view json_text, const std::filesystem::path& base_dir = {});
RunConfigFile load_run_config(const std::filesystem::path& path);

}  // namespace hotspot
