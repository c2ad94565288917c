#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "hotspot/config.hpp"
#include "hotspot/solver.hpp"

namespace hotspot::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;   // bad flags, invalid config, failed run
inline constexpr int kExitNegative = 2;  // check: no route holds; verify: a probe exceeded its bound
inline constexpr int kExitBlowup = 3;    // simulate: BlowupSuspected

/// Entry point shared by the executable and the tests. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Runs one simulation and writes diagnostics.csv, snapshots, PGM heatmaps with
/// JSON sidecars and outcome.json into `settings.dir`. Returns the exit code.
int simulate(const RunConfigFile& config, std::ostream& err);

/// Writes outcome.json for a finished run.
void write_outcome(const std::filesystem::path& path, const RunResult& result);

/// Snapshot file stem for time t, e.g. "A_0.100000".
std::string snapshot_stem(char field, double t);

}  // namespace hotspot::cli
