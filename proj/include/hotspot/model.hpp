#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>

#include "hotspot/grid.hpp"

namespace hotspot {

/// Coefficients of the attractiveness / criminal-density system with
/// burglar relaxation:
///
///   A_t = eta Lap A + psi N A (1 - A) + atilde - A
///   N_t = div(grad N - N grad(chi log A)) + omega - omega N
struct ModelParams {
    double eta = 0.1;
    double psi = 14.0 / 3.0 * 1e-3;
    double omega = 84.0;
    double atilde = 0.7;
    double chi = 2.0;

    // Throws InvalidConfig naming the offending coefficient unless all five are > 0.
    void validate() const;
};

/// Coefficients of the original variant without burglar fatigue:
///
///   A_t = eta Lap A + N A + a0 - A
///   N_t = div(grad N - N grad(chi log A)) - N A + abar - a0
struct ShortParams {
    double eta = 0.1;
    double a0 = 1.0 / 30.0;
    double abar = 1.0 / 30.0 + 0.1;
    double chi = 2.0;

    void validate() const;
};

/// Growth envelopes declared by the author of a general model:
///   |g(A, N)| <= g1(A) N^(1 - delta) + g2(A),   |f(A, N)| <= f1(A) N + f2(A).
struct GrowthEnvelopes {
    double delta = 0.5;
    std::function<double(double)> g1;
    std::function<double(double)> g2;
    std::function<double(double)> f1;
    std::function<double(double)> f2;
};

/// In-process plugin for the general chemotaxis-type system
///
///   A_t = eta Lap A - A + f(A, N)
///   N_t = Lap N - div(N grad h(A)) - omega N + g(A, N)
///
/// `dh` / `d2h` may be left empty, in which case one-sided finite differences are used.
struct GeneralModel {
    double eta = 1.0;
    double omega = 1.0;
    std::function<double(double, double)> f;
    std::function<double(double, double)> g;
    std::function<double(double)> h;
    std::function<double(double)> dh;
    std::function<double(double)> d2h;
    double a_min = 0.0;
    double a_max = 0.0;
    GrowthEnvelopes envelopes;
};

using ModelKind = std::variant<ModelParams, ShortParams, GeneralModel>;

double attractiveness_diffusivity(const ModelKind& kind);

/// Explicit reaction parts with the stiff linear decay split off, so that
/// A_t = ... + rA - lambda_A A and N_t = ... + rN - lambda_N N.
struct ReactionTerms {
    ScalarField rA;
    ScalarField rN;
    double lambda_A;
    double lambda_N;
};

/// Checks A > 0 (NonPositiveA) and N >= 0 (NegativeN) before evaluating.
ReactionTerms reaction_terms(const ModelKind& kind, const ScalarField& A, const ScalarField& N);
/// Same without the sign checks; used by the time stepper, which applies its own guard tolerances.
ReactionTerms reaction_terms_unchecked(const ModelKind& kind, const ScalarField& A, const ScalarField& N);

/// Face-centred gradient of chi log A, i.e. chi grad(A) / A with A averaged
/// to faces. Throws FloorViolation if A drops below `floor` anywhere.
VectorField sensitivity_grad(const ScalarField& A, double chi, double floor);
/// Dispatches on the model: log sensitivity for the two crime models,
/// face differences of h(A) for a general model.
VectorField sensitivity_grad(const ModelKind& kind, const ScalarField& A, double floor);

struct SteadyState {
    double a_star;
    double n_star;
    double residual;  // psi n* a*(1 - a*) + atilde - a*
};

/// Homogeneous steady state (a*, 1), a* the positive root of psi a^2 + (1 - psi) a - atilde.
SteadyState steady_state(const ModelParams& params);

struct DerivedBounds {
    double a_min;
    double a_max;
    double n1_max;
};

/// a_min = min{1, atilde, min A0}, a_max = max{1, atilde, max A0},
/// n1_max = max{||N0||_1, |Omega|}. Throws InvalidInitialData unless A0 > 0 and N0 >= 0.
DerivedBounds derived_bounds(const ScalarField& A0, const ScalarField& N0, const ModelParams& params);

// ---------------------------------------------------------------------------
// Sampled validation of the structural hypotheses a general model must meet.

enum class Hypothesis {
    SourceNonnegative,      // g(A, 0) >= 0
    InvariantBounds,        // f(a_min, N) >= a_min, f(a_max, N) <= a_max
    SourceGrowth,           // |g| <= g1 N^(1-delta) + g2
    ReactionGrowth,         // |f| <= f1 N + f2
    SensitivityRegularity,  // h', h'' bounded on [a_min, a_max]
};

std::string_view to_string(Hypothesis h) noexcept;

struct HypothesisSampling {
    int n_samples = 1000;
    std::uint64_t seed = 1;
    double n_big = 1e3;
    // Sampled |h'| or |h''| above this is reported as a suspected singularity.
    double derivative_limit = 1e8;
};

struct HypothesisReport {
    bool passed = true;
    std::optional<Hypothesis> failed;
    double a = 0.0;
    double n = 0.0;
    std::string message;
    long points_checked = 0;
};

HypothesisReport validate_general_hypotheses(const GeneralModel& model, const HypothesisSampling& sampling);

/// Wraps the main model as a general plugin: f = psi N A(1-A) + atilde,
/// g = omega (the -omega N decay is part of the general system), h = chi log A.
GeneralModel as_general(const ModelParams& params, const DerivedBounds& bounds);

}  // namespace hotspot
