#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hotspot/analysis.hpp"
#include "hotspot/grid.hpp"
#include "hotspot/model.hpp"

namespace hotspot {

struct SimState {
    double t = 0.0;
    ScalarField A;
    ScalarField N;
    long step_count = 0;
};

enum class FluxScheme { Centered, Upwind };

namespace ic {
struct Constants {
    double a0 = 1.0;
    double n0 = 1.0;
};
/// A0 = a* + amplitude cos(j pi x/L) cos(k pi y/L),
/// N0 = 1 + n_amplitude cos(j pi x/L) cos(k pi y/L).
struct PerturbedSteady {
    double amplitude = 0.0;
    int mode_j = 1;
    int mode_k = 0;
    double n_amplitude = 0.0;
};
struct FromFiles {
    std::filesystem::path path_A;
    std::filesystem::path path_N;
};
}  // namespace ic

using InitialCondition = std::variant<ic::Constants, ic::PerturbedSteady, ic::FromFiles>;

struct SimConfig {
    GridSpec grid{1.0, 64};
    ModelKind model = ModelParams{};
    double t_end = 1.0;
    double dt_init = 1e-3;
    double dt_min = 1e-8;
    // Upper step limit; defaults to output_every when unset.
    std::optional<double> dt_max;
    double cfl_advection = 0.5;
    FluxScheme flux_scheme = FluxScheme::Centered;
    double output_every = 0.01;
    InitialCondition ic = ic::PerturbedSteady{};
    double guard_tol = 1e-6;
    // Sensitivity floor; defaults to a_min / 2.
    std::optional<double> a_floor;
    bool keep_snapshots = true;
    bool energy_residuals = true;

    double effective_dt_max() const { return dt_max.value_or(output_every); }
    // Throws InvalidConfig on inconsistent settings.
    void validate() const;
};

/// Builds (A0, N0) and checks A0 > 0, N0 >= 0 (InvalidInitialData).
SimState initial_state(const SimConfig& config);

/// Invariant region used by the positivity guard and the a-priori monitors.
/// For the main model this is derived_bounds; for the general model the declared
/// bounds; for the short variant a_min = min{a0, min A0}.
DerivedBounds solver_bounds(const SimConfig& config, const SimState& initial);

struct StepContext {
    DerivedBounds bounds;
    double a_floor;
};

StepContext make_step_context(const SimConfig& config, const SimState& initial);

/// One IMEX step: explicit chemotaxis and nonlinear reaction, implicit
/// diffusion and linear decay. Throws PositivityBreach or NonFinite.
SimState step(const SimState& state, double dt, const SimConfig& config, const StepContext& ctx);

/// Max chemotactic face velocity |chi d(log A)/dn| for the current state.
double max_face_velocity(const SimState& state, const SimConfig& config, const StepContext& ctx);

/// Next step size from the growth cap, the advective CFL limit, dt_max, and
/// the distance to the next output time.
double adapt_dt(const SimState& state, double dt_prev, double next_output, const SimConfig& config,
                const StepContext& ctx);

struct Completed {};
struct BlowupSuspected {
    double t;
};
struct Failed {
    std::string reason;
};
using Outcome = std::variant<Completed, BlowupSuspected, Failed>;

std::string_view outcome_name(const Outcome& outcome) noexcept;

struct Snapshot {
    double t;
    ScalarField A;
    ScalarField N;
};

/// Receives finalised diagnostics rows and snapshots while a run progresses.
struct RunObserver {
    std::function<void(const SimState&)> on_snapshot;
    std::function<void(const DiagnosticsRecord&)> on_record;
};

struct RunResult {
    std::vector<DiagnosticsRecord> trajectory;
    std::vector<Snapshot> snapshots;
    Outcome outcome;
    std::optional<SimState> final_state;
    DerivedBounds bounds;
    double initial_mass_N = 0.0;
    // Max over steps of |M(n+1) - M(n) - dt omega (|Omega| - M(n+1))| / |Omega| (main model only).
    double max_step_mass_residual = 0.0;
    long steps = 0;
    long rejected_steps = 0;
};

/// Integrates to t_end or termination. Deterministic for a given config.
RunResult run(const SimConfig& config, const RunObserver& observer = {});

}  // namespace hotspot
