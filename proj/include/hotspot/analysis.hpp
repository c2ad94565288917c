#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>

#include "hotspot/grid.hpp"
#include "hotspot/model.hpp"

namespace hotspot {

// Best-constant bounds on the square (0, L)^2: mu^2 <= 3/2, K <= 12.
inline constexpr double kSquareMuSq = 1.5;
inline constexpr double kSquareK = 12.0;

/// eps0 = mu^-2 K^-1/2; equals 1/(3 sqrt 3) for the square bounds.
double epsilon0(double mu_sq, double K);
double square_epsilon0();

// ---------------------------------------------------------------------------
// Global-existence condition.

enum class EpsilonSource { SquareClosedForm, UserSupplied };
enum class ExistenceRoute { SizeCondition, WeakSensitivity, None };

std::string_view to_string(EpsilonSource s) noexcept;
std::string_view to_string(ExistenceRoute r) noexcept;

struct MuK {
    double mu;
    double K;
};

struct ExistenceReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double epsilon0 = 0.0;
    EpsilonSource epsilon0_source = EpsilonSource::SquareClosedForm;
    std::optional<MuK> mu_k;
    // lhs < rhs (strict).
    bool holds = false;
    double margin = 0.0;  // rhs - lhs
    // chi <= 1, atilde <= 1 and a_max <= 1: no size condition needed.
    bool weak_sensitivity_holds = false;
    ExistenceRoute route = ExistenceRoute::None;

    // Echoed inputs.
    double eta = 0.0, psi = 0.0, chi = 0.0, atilde = 0.0;
    DerivedBounds bounds{};
    double area = 0.0;

    bool any_route_holds() const noexcept { return holds || weak_sensitivity_holds; }
};

/// lhs = (a_max/a_min)^2 (a_max - a_min) n1_max, rhs = eps0 eta / (psi chi^2).
ExistenceReport check_global_condition(const ModelParams& params, const DerivedBounds& bounds,
                                       const GridSpec& domain, const std::optional<MuK>& mu_k = std::nullopt);

/// Flat JSON object: lhs, rhs, epsilon0, epsilon0_source, holds, margin, route, routes, inputs.
std::string to_json(const ExistenceReport& report);

struct CriticalConstants {
    double gamma;
    double atilde_minus;
};

/// For the worked-example data (A0 between atilde and 1, ||N0||_1 <= |Omega|) the
/// size condition reduces to (1 - atilde)/atilde^2 < gamma eta with
/// gamma = eps0 / (chi^2 psi |Omega|), equivalently atilde > 2 / (1 + sqrt(1 + 4 gamma eta)).
CriticalConstants critical_constants(double eta, double psi, double area, double chi = 2.0);

// ---------------------------------------------------------------------------
// Entropy functionals.

struct EntropyParams {
    double sigma;
    double c1;
    double omega_tilde;
};

/// c1 <= 0: the approximate-entropy estimate does not apply.
struct InfeasibleRegime {
    double sigma;
    double c1;
};

using EntropyRegime = std::variant<EntropyParams, InfeasibleRegime>;

/// sigma = (2 psi^2 / eta) a_max^4 mu^2 n1_max and
/// c1 = eta/2 (1 - K chi^4 eta^-2 mu^4 psi^2 n1_max^2 a_min^-4 a_max^4 (a_max - a_min)^2).
EntropyRegime entropy_params(const ModelParams& params, const DerivedBounds& bounds,
                             double mu_sq = kSquareMuSq, double K = kSquareK);
double entropy_sigma(const EntropyRegime& regime);

/// sigma \int (N log N - N + 1) + 1/2 ||grad A||^2. Cells with N = 0 contribute 1.
double entropy_phi(const ScalarField& A, const ScalarField& N, double sigma);

/// Vertex of (1+eta)^2 c^2 - 2c(chi + 2 eta - chi eta) + chi^2 when the quadratic is
/// <= 0 there (up to 1e-14); nothing otherwise. Feasible exactly when chi <= 1.
std::optional<double> choose_c(double chi, double eta);
double choose_c_quadratic(double c, double chi, double eta);

/// \int N (log N - c log A). Throws NonPositiveA.
double entropy_Y(const ScalarField& A, const ScalarField& N, double c);

// ---------------------------------------------------------------------------
// A-priori monitors.

struct BoundFlag {
    bool ok = true;
    double margin = 0.0;  // >= 0 when satisfied
};

struct BoundFlags {
    BoundFlag a_min;   // min A >= a_min - tol (a_max - a_min)
    BoundFlag a_max;   // max A <= a_max + tol (a_max - a_min)
    BoundFlag n_lower; // min N >= 1 - exp(-omega t) - tol
};

struct AprioriCheck {
    BoundFlags flags;
    double mass_residual;  // |mass(N) - law(t)| / |Omega|
    double mass_law;       // exp(-omega t) n0_mass + |Omega| (1 - exp(-omega t))
    double n_lower_bound;  // 1 - exp(-omega t)
};

AprioriCheck verify_apriori(double t, const ScalarField& A, const ScalarField& N, const DerivedBounds& bounds,
                            const ModelParams& params, double n0_mass, double tol);

// ---------------------------------------------------------------------------
// Energy-identity residuals over a window (t - d, t, t + d).

struct EnergyWindow {
    double t_prev, t_mid, t_next;
    const ScalarField* A_prev;
    const ScalarField* N_prev;
    const ScalarField* A_mid;
    const ScalarField* N_mid;
    const ScalarField* A_next;
    const ScalarField* N_next;
};

struct EnergyResiduals {
    std::array<double, 4> r{};
    // omega \int (log N - N + 1), which must be <= 0.
    double id3_rhs = 0.0;
    bool id3_sign_ok = true;
};

/// Time derivatives by central differences, spatial terms by the grid functionals.
/// Throws NonPositiveN if N <= 0 anywhere in the window, InvalidArgument for a
/// non-uniform window.
EnergyResiduals energy_residuals(const EnergyWindow& window, const ModelParams& params, double a_floor);

// ---------------------------------------------------------------------------
// Functional-inequality probes. Verdicts are sampled evidence only.

struct PoincareProbe {
    double ratio_l1;                      // ||u - mean||_2 / ||grad u||_1
    std::optional<double> sobolev_slack;  // only for strictly positive u
};

/// Throws ConstantField for a (numerically) constant input.
PoincareProbe poincare_probe(const ScalarField& u);

/// mu^2 ||u||_1 fisher(u) + |Omega|^-1 ||u||_1^2 - ||u||_2^2 with mu^2 = 3/2.
/// Throws NonPositiveField unless u > 0.
double sobolev_slack(const ScalarField& u, double mu_sq = kSquareMuSq);

struct InterpolationProbe {
    double ratio_K;                     // grad4 / (osc^2 laplacian_l2sq)
    std::optional<double> fourier_gap;  // relative, from the cosine coefficients
};

/// Throws DegenerateField for constant or discretely harmonic input.
InterpolationProbe interpolation_probe(const ScalarField& u,
                                       const CosineCoefficients* coeffs = nullptr);

struct SpectralHessian {
    double uxx_sq;
    double uyy_sq;
    double uxy_sq;
    double lap_sq;
};

/// Exact L2 norms of second derivatives of a cosine series on (0, L)^2.
SpectralHessian spectral_hessian(const CosineCoefficients& coeffs);

// ---------------------------------------------------------------------------
// Per-output diagnostics.

struct DiagnosticsRecord {
    double t = 0.0;
    double mass_N = 0.0;
    double minA = 0.0;
    double maxA = 0.0;
    double minN = 0.0;
    double grad_A_l2sq = 0.0;
    std::optional<double> phi;
    std::optional<double> y_entropy;
    std::optional<double> c_used;
    std::optional<double> mass_residual;
    std::optional<BoundFlags> bound_flags;
    std::optional<EnergyResiduals> energy;
    // Norms kept for reporting the max of ||N||_2 over a run.
    double n_l2 = 0.0;
};

/// Header and row for diagnostics.csv; column order:
/// t, mass_N, minA, maxA, minN, grad_A_l2sq, phi, y_entropy, mass_residual, r1, r2, r3, r4, flags.
std::string diagnostics_csv_header();
std::string to_csv_row(const DiagnosticsRecord& record);

}  // namespace hotspot
