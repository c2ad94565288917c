#include "hotspot/solver.hpp"

#include <cmath>
#include <deque>
#include <numbers>
#include <sstream>

#include "hotspot/field_io.hpp"

namespace hotspot {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

const ModelParams* main_model(const SimConfig& config) { return std::get_if<ModelParams>(&config.model); }

ScalarField cosine_mode(const GridSpec& grid, int j, int k) {
    const double kx = std::numbers::pi * j / grid.L();
    const double ky = std::numbers::pi * k / grid.L();
    return ScalarField::from_function(grid, [&](double x, double y) { return std::cos(kx * x) * std::cos(ky * y); });
}

}  // namespace

void SimConfig::validate() const {
    auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); };
    std::visit(overloaded{[](const ModelParams& p) { p.validate(); }, [](const ShortParams& p) { p.validate(); },
                          [&](const GeneralModel& m) {
                              if (!m.f || !m.g || !m.h) fail("general model needs f, g and h");
                              if (!(m.eta > 0.0) || !(m.omega >= 0.0)) fail("general model needs eta > 0, omega >= 0");
                          }},
               model);
    if (!(t_end > 0.0)) fail("t_end must be > 0");
    if (!(dt_init > 0.0)) fail("dt_init must be > 0");
    if (!(dt_min > 0.0)) fail("dt_min must be > 0");
    if (!(dt_min <= dt_init)) fail("dt_min must not exceed dt_init");
    if (!(output_every > 0.0)) fail("output_every must be > 0");
    if (!(output_every >= dt_min)) fail("output_every must be >= dt_min");
    if (dt_max && !(*dt_max >= dt_min)) fail("dt_max must be >= dt_min");
    if (!(cfl_advection > 0.0 && cfl_advection <= 1.0)) fail("cfl must lie in (0, 1]");
    if (!(guard_tol >= 0.0)) fail("guard_tol must be >= 0");
    if (a_floor && !(*a_floor > 0.0)) fail("a_floor must be > 0");
}

SimState initial_state(const SimConfig& config) {
    const GridSpec& grid = config.grid;
    SimState s{0.0, ScalarField(grid), ScalarField(grid), 0};
    std::visit(
        overloaded{
            [&](const ic::Constants& c) {
                s.A = ScalarField(grid, c.a0);
                s.N = ScalarField(grid, c.n0);
            },
            [&](const ic::PerturbedSteady& p) {
                double a_center = 0.0;
                double n_center = 1.0;
                if (const auto* mp = std::get_if<ModelParams>(&config.model)) {
                    a_center = steady_state(*mp).a_star;
                } else if (const auto* sp = std::get_if<ShortParams>(&config.model)) {
                    a_center = sp->abar;
                    n_center = (sp->abar - sp->a0) / sp->abar;
                } else {
                    throw Error(ErrorCode::InvalidConfig, "perturbed_steady needs a model with a known steady state");
                }
                if (p.mode_j < 0 || p.mode_k < 0 || 2 * std::max(p.mode_j, p.mode_k) >= grid.n()) {
                    throw Error(ErrorCode::InvalidConfig, "perturbation mode is not resolvable on this grid");
                }
                const ScalarField mode = cosine_mode(grid, p.mode_j, p.mode_k);
                s.A = ScalarField(grid, a_center);
                s.N = ScalarField(grid, n_center);
                for (std::size_t k = 0; k < grid.cells(); ++k) {
                    s.A.values()[k] += p.amplitude * mode.values()[k];
                    s.N.values()[k] += p.n_amplitude * mode.values()[k];
                }
            },
            [&](const ic::FromFiles& f) {
                s.A = read_field(f.path_A, grid);
                s.N = read_field(f.path_N, grid);
            },
        },
        config.ic);
    if (!s.A.all_finite() || !(s.A.min() > 0.0)) {
        throw Error(ErrorCode::InvalidInitialData, "initial attractiveness must be finite and > 0");
    }
    if (!s.N.all_finite() || !(s.N.min() >= 0.0)) {
        throw Error(ErrorCode::InvalidInitialData, "initial criminal density must be finite and >= 0");
    }
    return s;
}

DerivedBounds solver_bounds(const SimConfig& config, const SimState& initial) {
    return std::visit(
        overloaded{
            [&](const ModelParams& p) { return derived_bounds(initial.A, initial.N, p); },
            [&](const ShortParams& p) {
                return DerivedBounds{std::min(p.a0, initial.A.min()), std::max(p.abar, initial.A.max()),
                                     std::max(lp_norm(initial.N, 1.0), config.grid.area())};
            },
            [&](const GeneralModel& m) {
                return DerivedBounds{m.a_min, m.a_max, std::max(lp_norm(initial.N, 1.0), config.grid.area())};
            },
        },
        config.model);
}

StepContext make_step_context(const SimConfig& config, const SimState& initial) {
    StepContext ctx;
    ctx.bounds = solver_bounds(config, initial);
    ctx.a_floor = config.a_floor.value_or(0.5 * ctx.bounds.a_min);
    return ctx;
}

double max_face_velocity(const SimState& state, const SimConfig& config, const StepContext& ctx) {
    return sensitivity_grad(config.model, state.A, ctx.a_floor).max_abs();
}

SimState step(const SimState& state, double dt, const SimConfig& config, const StepContext& ctx) {
    if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "time step must be > 0");
    const GridSpec& grid = state.A.grid();
    const int n = grid.n();

    // Chemotactic flux N_face * grad(theta(A)) on interior faces.
    VectorField flux = sensitivity_grad(config.model, state.A, ctx.a_floor);
    const ScalarField& N = state.N;
    const bool upwind = config.flux_scheme == FluxScheme::Upwind;
    auto face_n = [upwind](double left, double right, double v) {
        if (!upwind) return 0.5 * (left + right);
        return v >= 0.0 ? left : right;
    };
    for (int j = 0; j < n; ++j) {
        for (int i = 1; i < n; ++i) flux.fx(i, j) *= face_n(N(i - 1, j), N(i, j), flux.fx(i, j));
    }
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < n; ++i) flux.fy(i, j) *= face_n(N(i, j - 1), N(i, j), flux.fy(i, j));
    }
    const ScalarField transport = divergence(flux);

    ReactionTerms r = reaction_terms_unchecked(config.model, state.A, state.N);

    ScalarField rhs_A = state.A;
    ScalarField rhs_N = state.N;
    for (std::size_t k = 0; k < grid.cells(); ++k) {
        rhs_A.values()[k] += dt * r.rA.values()[k];
        rhs_N.values()[k] += dt * (r.rN.values()[k] - transport.values()[k]);
    }

    SimState next{state.t + dt, helmholtz_solve(rhs_A, attractiveness_diffusivity(config.model), r.lambda_A, dt),
                  helmholtz_solve(rhs_N, 1.0, r.lambda_N, dt), state.step_count + 1};
    next.A.require_finite("attractiveness");
    next.N.require_finite("criminal density");

    const DerivedBounds& b = ctx.bounds;
    const double a_guard = b.a_min - config.guard_tol * (b.a_max - b.a_min) - 1e-12 * b.a_max;
    const double a_low = next.A.min();
    const double n_low = next.N.min();
    if (a_low < a_guard || n_low < -config.guard_tol) {
        std::ostringstream msg;
        msg << "at t=" << next.t << " with dt=" << dt << ": min A = " << a_low << " (guard " << a_guard
            << "), min N = " << n_low;
        throw Error(ErrorCode::PositivityBreach, msg.str());
    }
    return next;
}

double adapt_dt(const SimState& state, double dt_prev, double next_output, const SimConfig& config,
                const StepContext& ctx) {
    double dt = std::min(dt_prev * 1.1, config.effective_dt_max());
    const double v = max_face_velocity(state, config, ctx);
    if (v > 0.0) dt = std::min(dt, config.cfl_advection * config.grid.h() / v);
    const double remaining = next_output - state.t;
    // Snap onto the output time instead of leaving a sliver step behind.
    if (remaining <= dt * (1.0 + 1e-9)) dt = remaining;
    return dt;
}

std::string_view outcome_name(const Outcome& outcome) noexcept {
    return std::visit(overloaded{[](const Completed&) { return std::string_view("Completed"); },
                                 [](const BlowupSuspected&) { return std::string_view("BlowupSuspected"); },
                                 [](const Failed&) { return std::string_view("Failed"); }},
                      outcome);
}

namespace {

// Tracks the last two emitted outputs so that energy residuals for output k
// can be computed once output k+1 is known.
class Recorder {
public:
    Recorder(const SimConfig& config, const StepContext& ctx, double n0_mass, RunResult& result,
             const RunObserver& observer)
        : config_(config), ctx_(ctx), n0_mass_(n0_mass), result_(result), observer_(observer) {
        if (const auto* p = main_model(config)) {
            params_ = *p;
            sigma_ = entropy_sigma(entropy_params(*p, ctx.bounds));
            c_ = choose_c(p->chi, p->eta);
        }
    }

    void emit(const SimState& s) {
        if (config_.keep_snapshots) result_.snapshots.push_back(Snapshot{s.t, s.A, s.N});
        if (observer_.on_snapshot) observer_.on_snapshot(s);

        window_.push_back(Entry{s, make_record(s)});
        if (window_.size() == 3) {
            add_energy(window_[0], window_[1], window_[2]);
            finalize(window_[1].record);
            window_.pop_front();
        } else if (window_.size() == 2 && !started_) {
            finalize(window_[0].record);
            started_ = true;
        }
    }

    void flush() {
        if (!window_.empty()) finalize(started_ ? window_.back().record : window_.front().record);
        window_.clear();
    }

    std::optional<double> last_emitted() const {
        if (window_.empty()) return std::nullopt;
        return window_.back().state.t;
    }

private:
    struct Entry {
        SimState state;
        DiagnosticsRecord record;
    };

    DiagnosticsRecord make_record(const SimState& s) const {
        DiagnosticsRecord rec;
        rec.t = s.t;
        rec.mass_N = integral(s.N);
        rec.minA = s.A.min();
        rec.maxA = s.A.max();
        rec.minN = s.N.min();
        rec.grad_A_l2sq = grad_l2sq(s.A);
        rec.n_l2 = lp_norm(s.N, 2.0);
        if (params_) {
            if (rec.minN >= 0.0) {
                rec.phi = entropy_phi(s.A, s.N, sigma_);
                if (c_) {
                    rec.y_entropy = entropy_Y(s.A, s.N, *c_);
                    rec.c_used = *c_;
                }
            }
            const AprioriCheck check = verify_apriori(s.t, s.A, s.N, ctx_.bounds, *params_, n0_mass_, config_.guard_tol);
            rec.mass_residual = check.mass_residual;
            rec.bound_flags = check.flags;
        }
        return rec;
    }

    void add_energy(const Entry& prev, Entry& mid, const Entry& next) const {
        if (!params_ || !config_.energy_residuals) return;
        const double d0 = mid.state.t - prev.state.t;
        const double d1 = next.state.t - mid.state.t;
        if (std::abs(d1 - d0) > 1e-9 * d0) return;
        EnergyWindow w{prev.state.t, mid.state.t, next.state.t, &prev.state.A, &prev.state.N,
                       &mid.state.A,  &mid.state.N, &next.state.A, &next.state.N};
        try {
            mid.record.energy = energy_residuals(w, *params_, ctx_.a_floor);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NonPositiveN && e.code() != ErrorCode::FloorViolation) throw;
        }
    }

    void finalize(const DiagnosticsRecord& rec) {
        result_.trajectory.push_back(rec);
        if (observer_.on_record) observer_.on_record(rec);
    }

    const SimConfig& config_;
    const StepContext& ctx_;
    double n0_mass_;
    RunResult& result_;
    const RunObserver& observer_;
    std::optional<ModelParams> params_;
    double sigma_ = 0.0;
    std::optional<double> c_;
    std::deque<Entry> window_;
    bool started_ = false;
};

bool retryable(ErrorCode code) {
    return code == ErrorCode::PositivityBreach || code == ErrorCode::NonFinite || code == ErrorCode::FloorViolation;
}

}  // namespace

RunResult run(const SimConfig& config, const RunObserver& observer) {
    config.validate();
    RunResult result;
    SimState state = initial_state(config);
    const StepContext ctx = make_step_context(config, state);
    result.bounds = ctx.bounds;
    result.initial_mass_N = integral(state.N);
    result.outcome = Completed{};

    const ModelParams* params = main_model(config);
    const double area = config.grid.area();
    Recorder recorder(config, ctx, result.initial_mass_N, result, observer);

    try {
        recorder.emit(state);
        long output_index = 1;
        double dt_nominal = std::min(config.dt_init, config.effective_dt_max());
        bool first = true;
        const double t_tol = 1e-12 * std::max(1.0, config.t_end);

        while (config.t_end - state.t > t_tol) {
            const double next_output = std::min(output_index * config.output_every, config.t_end);
            double dt = first ? std::min(dt_nominal, next_output - state.t)
                              : adapt_dt(state, dt_nominal, next_output, config, ctx);
            if (first && next_output - state.t <= dt_nominal * (1.0 + 1e-9)) dt = next_output - state.t;
            first = false;
            const bool aligned = std::abs(state.t + dt - next_output) <= t_tol;
            if (!aligned) dt_nominal = dt;

            std::optional<SimState> next;
            try {
                next = step(state, dt, config, ctx);
            } catch (const Error& e) {
                if (!retryable(e.code())) throw;
                ++result.rejected_steps;
                dt_nominal = 0.5 * std::min(dt_nominal, dt);
                first = true;  // retry with the halved step, no growth
                if (dt_nominal < config.dt_min) {
                    result.outcome = BlowupSuspected{state.t};
                    break;
                }
                continue;
            }
            if (aligned) next->t = next_output;

            if (params) {
                const double m0 = integral(state.N);
                const double m1 = integral(next->N);
                const double res = std::abs(m1 - m0 - dt * params->omega * (area - m1)) / area;
                result.max_step_mass_residual = std::max(result.max_step_mass_residual, res);
            }
            state = std::move(*next);
            ++result.steps;

            if (aligned) {
                recorder.emit(state);
                ++output_index;
            }
        }
        // On early termination the last valid state is emitted as a final output.
        if (std::holds_alternative<BlowupSuspected>(result.outcome) && recorder.last_emitted() != state.t) {
            recorder.emit(state);
        }
    } catch (const Error& e) {
        result.outcome = Failed{e.what()};
    }
    recorder.flush();
    result.final_state = std::move(state);
    return result;
}

}  // namespace hotspot
