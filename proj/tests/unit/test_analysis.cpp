#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hotspot/analysis.hpp"
#include "json.hpp"

using namespace hotspot;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPsi = 14.0 / 3.0 * 1e-3;

ModelParams params(double atilde = 0.7, double chi = 2.0, double eta = 0.1) {
    ModelParams p;
    p.eta = eta;
    p.psi = kPsi;
    p.omega = 84.0;
    p.atilde = atilde;
    p.chi = chi;
    return p;
}

const GridSpec kUnit(1.0, 8);

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an Error";
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Existence, SquareEpsilonIsClosedForm) {
    EXPECT_NEAR(square_epsilon0(), 1.0 / (3.0 * std::sqrt(3.0)), 1e-16);
    EXPECT_NEAR(epsilon0(kSquareMuSq, kSquareK), square_epsilon0(), 1e-16);
    EXPECT_NEAR(epsilon0(4.0, 9.0), 1.0 / 12.0, 1e-16);
}

TEST(Existence, HoldsAtStaticValueBounds) {
    const ExistenceReport r = check_global_condition(params(), DerivedBounds{0.7, 1.0, 1.0}, kUnit);
    const double lhs = std::pow(1.0 / 0.7, 2) * 0.3;
    const double rhs = 1.0 / (3.0 * std::sqrt(3.0)) * 0.1 / (kPsi * 4.0);
    EXPECT_NEAR(r.lhs, lhs, 1e-14);
    EXPECT_NEAR(r.rhs, rhs, 1e-12);
    EXPECT_NEAR(r.lhs, 0.6122, 5e-5);
    EXPECT_NEAR(r.rhs, 1.0310, 5e-5);
    EXPECT_TRUE(r.holds);
    EXPECT_EQ(r.route, ExistenceRoute::SizeCondition);
    EXPECT_NEAR(r.margin, rhs - lhs, 1e-12);
    EXPECT_EQ(r.epsilon0_source, EpsilonSource::SquareClosedForm);
}

TEST(Existence, FailsAtHalfLowerBound) {
    const ExistenceReport r = check_global_condition(params(), DerivedBounds{0.5, 1.0, 1.0}, kUnit);
    EXPECT_NEAR(r.lhs, 2.0, 1e-14);
    EXPECT_FALSE(r.holds);
    EXPECT_FALSE(r.any_route_holds());
    EXPECT_EQ(r.route, ExistenceRoute::None);
    EXPECT_LT(r.margin, 0.0);
}

TEST(Existence, ZeroOscillationHoldsTrivially) {
    const ExistenceReport r = check_global_condition(params(1.0), DerivedBounds{1.0, 1.0, 1.0}, kUnit);
    EXPECT_EQ(r.lhs, 0.0);
    EXPECT_TRUE(r.holds);
}

TEST(Existence, StrictInequality) {
    // Pick n1_max so that lhs equals rhs up to rounding in the last place.
    const ModelParams p = params();
    const double rhs = square_epsilon0() * p.eta / (p.psi * p.chi * p.chi);
    const double per_unit = std::pow(1.0 / 0.7, 2) * 0.3;
    const ExistenceReport r = check_global_condition(p, DerivedBounds{0.7, 1.0, rhs / per_unit}, kUnit);
    EXPECT_EQ(r.holds, r.lhs < r.rhs);
}

TEST(Existence, WeakSensitivityRouteIgnoresSize) {
    const ExistenceReport r = check_global_condition(params(0.9, 0.8), DerivedBounds{0.5, 1.0, 1e6}, kUnit);
    EXPECT_FALSE(r.holds);
    EXPECT_TRUE(r.weak_sensitivity_holds);
    EXPECT_TRUE(r.any_route_holds());
    EXPECT_EQ(r.route, ExistenceRoute::WeakSensitivity);
    EXPECT_FALSE(check_global_condition(params(0.9, 1.2), DerivedBounds{0.5, 1.0, 1e6}, kUnit).weak_sensitivity_holds);
    EXPECT_FALSE(check_global_condition(params(0.9, 0.8), DerivedBounds{0.5, 1.1, 1e6}, kUnit).weak_sensitivity_holds);
}

TEST(Existence, UserSuppliedConstants) {
    const ExistenceReport r = check_global_condition(params(), DerivedBounds{0.7, 1.0, 1.0}, kUnit, MuK{2.0, 9.0});
    EXPECT_EQ(r.epsilon0_source, EpsilonSource::UserSupplied);
    EXPECT_NEAR(r.epsilon0, 1.0 / 12.0, 1e-16);
}

TEST(Existence, VerdictDependsOnRatioAndSpreadOnly) {
    // lhs = ratio^2 * spread * n1_max: scaling both bounds by s and n1_max by 1/s leaves it fixed.
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.1, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double a_min = u(rng), ratio = 1.0 + u(rng), n1 = u(rng), s = u(rng);
        const ExistenceReport r0 = check_global_condition(params(), DerivedBounds{a_min, a_min * ratio, n1}, kUnit);
        const ExistenceReport r1 =
            check_global_condition(params(), DerivedBounds{s * a_min, s * a_min * ratio, n1 / s}, kUnit);
        EXPECT_NEAR(r0.lhs, r1.lhs, 1e-12 * r0.lhs);
        if (std::abs(r0.lhs - r0.rhs) > 1e-9 * r0.rhs) EXPECT_EQ(r0.holds, r1.holds);
    }
}

TEST(Existence, JsonShape) {
    const ExistenceReport r = check_global_condition(params(), DerivedBounds{0.7, 1.0, 1.0}, kUnit);
    const auto j = nlohmann::json::parse(to_json(r));
    for (const char* key : {"lhs", "rhs", "epsilon0", "holds", "margin", "route", "inputs"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    EXPECT_EQ(j["route"], "size_condition");
    EXPECT_EQ(j["epsilon0_source"], "square_closed_form");
    EXPECT_DOUBLE_EQ(j["inputs"]["eta"].get<double>(), 0.1);
    EXPECT_DOUBLE_EQ(j["inputs"]["a_min"].get<double>(), 0.7);
}

TEST(CriticalConstants, GammaClosedForm) {
    const CriticalConstants c = critical_constants(0.1, kPsi, 1.0);
    EXPECT_NEAR(c.gamma, 125.0 * std::sqrt(3.0) / 21.0, 1e-12);
    EXPECT_NEAR(c.gamma, 10.31, 0.005);
}

TEST(CriticalConstants, TableValues) {
    const double expected[][2] = {{0.01, 0.91}, {0.05, 0.73}, {0.1, 0.61}, {0.2, 0.49}};
    for (const auto& row : expected) {
        EXPECT_NEAR(critical_constants(row[0], kPsi, 1.0).atilde_minus, row[1], 0.005) << row[0];
    }
}

TEST(CriticalConstants, ThresholdMatchesConditionBoundary) {
    // Just above the threshold the size condition holds with (a_min, a_max, n1_max) = (atilde, 1, 1).
    for (double eta : {0.01, 0.1, 0.2}) {
        const double am = critical_constants(eta, kPsi, 1.0).atilde_minus;
        EXPECT_TRUE(check_global_condition(params(am + 1e-6, 2.0, eta), DerivedBounds{am + 1e-6, 1.0, 1.0}, kUnit).holds);
        EXPECT_FALSE(check_global_condition(params(am - 1e-6, 2.0, eta), DerivedBounds{am - 1e-6, 1.0, 1.0}, kUnit).holds);
    }
}

TEST(CriticalConstants, MonotoneAndLimits) {
    double prev = 1.0;
    for (double eta = 1e-4; eta < 10.0; eta *= 1.7) {
        const double v = critical_constants(eta, kPsi, 1.0).atilde_minus;
        EXPECT_LT(v, prev);
        prev = v;
    }
    EXPECT_NEAR(critical_constants(1e-12, kPsi, 1.0).atilde_minus, 1.0, 1e-9);
    EXPECT_LT(critical_constants(1e9, kPsi, 1.0).atilde_minus, 1e-3);
    // Larger gamma (smaller psi) lowers the threshold.
    EXPECT_LT(critical_constants(0.1, kPsi / 2, 1.0).atilde_minus, critical_constants(0.1, kPsi, 1.0).atilde_minus);
}

TEST(EntropyParams, SigmaAndFeasibility) {
    const EntropyRegime ok = entropy_params(params(), DerivedBounds{0.7, 1.0, 1.0});
    ASSERT_TRUE(std::holds_alternative<EntropyParams>(ok));
    const auto& e = std::get<EntropyParams>(ok);
    EXPECT_NEAR(e.sigma, 2.0 * kPsi * kPsi / 0.1 * 1.5, 1e-18);
    EXPECT_NEAR(e.sigma, 6.533e-4, 1e-7);
    EXPECT_GT(e.c1, 0.0);
    EXPECT_EQ(e.omega_tilde, 2.0);

    const EntropyRegime bad = entropy_params(params(), DerivedBounds{0.5, 1.0, 1.0});
    ASSERT_TRUE(std::holds_alternative<InfeasibleRegime>(bad));
    EXPECT_LE(std::get<InfeasibleRegime>(bad).c1, 0.0);

    const EntropyRegime flat = entropy_params(params(1.0), DerivedBounds{1.0, 1.0, 1.0});
    EXPECT_NEAR(std::get<EntropyParams>(flat).c1, 0.05, 1e-16);
}

TEST(EntropyParams, ClosedFormC1) {
    const double eta = 0.1, chi = 2.0, mu2 = 1.5, K = 12.0, amin = 0.7, amax = 1.0;
    const double c1 = eta / 2.0 *
                      (1.0 - K * std::pow(chi, 4) / (eta * eta) * mu2 * mu2 * kPsi * kPsi * std::pow(amin, -4) *
                                 std::pow(amax, 4) * (amax - amin) * (amax - amin));
    const auto e = std::get<EntropyParams>(entropy_params(params(), DerivedBounds{amin, amax, 1.0}));
    EXPECT_NEAR(e.c1, c1, 1e-15);
}

TEST(EntropyPhi, ClosedForms) {
    const GridSpec g(1.0, 16);
    EXPECT_EQ(entropy_phi(ScalarField(g, 0.8), ScalarField(g, 1.0), 0.3), 0.0);
    EXPECT_NEAR(entropy_phi(ScalarField(g, 0.8), ScalarField(g, std::exp(1.0)), 0.3), 0.3, 1e-14);
    // N = 0 cells contribute the continuous limit 1.
    EXPECT_NEAR(entropy_phi(ScalarField(g, 0.8), ScalarField(g, 0.0), 0.3), 0.3, 1e-14);
    ScalarField N(g, 1.0);
    N(0, 0) = -1.0;
    EXPECT_EQ(code_of([&] { entropy_phi(ScalarField(g, 0.8), N, 0.3); }), ErrorCode::NegativeEntropyIntegrand);
}

TEST(EntropyPhi, GradientPart) {
    const GridSpec g(1.0, 32);
    const ScalarField A = ScalarField::from_function(g, [](double x, double) { return 1.0 + 0.1 * std::cos(kPi * x); });
    EXPECT_NEAR(entropy_phi(A, ScalarField(g, 1.0), 0.5), 0.5 * grad_l2sq(A), 1e-16);
}

TEST(ChooseC, BoundaryAndExamples) {
    for (double eta : {0.01, 0.1, 1.0, 7.0}) {
        const auto c = choose_c(1.0, eta);
        ASSERT_TRUE(c.has_value());
        EXPECT_NEAR(*c, 1.0 / (1.0 + eta), 1e-12);
        EXPECT_NEAR(choose_c_quadratic(1.0 / (1.0 + eta), 1.0, eta), 0.0, 1e-14);
    }
    EXPECT_FALSE(choose_c(2.0, 0.1).has_value());
    const auto half = choose_c(0.5, 1.0);
    ASSERT_TRUE(half.has_value());
    EXPECT_NEAR(*half, 0.5, 1e-15);
    EXPECT_NEAR(choose_c_quadratic(0.5, 0.5, 1.0), -0.75, 1e-15);
}

TEST(ChooseC, FeasibleExactlyForWeakSensitivity) {
    for (double chi = 0.05; chi < 3.0; chi += 0.05) {
        for (double eta : {1e-3, 0.01, 0.1, 0.5, 1.0, 4.0, 100.0}) {
            EXPECT_EQ(choose_c(chi, eta).has_value(), chi <= 1.0 + 1e-12) << chi << " " << eta;
        }
    }
}

TEST(EntropyY, ClosedForms) {
    const GridSpec g(1.0, 8);
    EXPECT_EQ(entropy_Y(ScalarField(g, 1.0), ScalarField(g, 1.0), 0.7), 0.0);
    EXPECT_NEAR(entropy_Y(ScalarField(g, 0.5), ScalarField(g, 1.0), 0.7), -0.7 * std::log(0.5), 1e-15);
    EXPECT_NEAR(entropy_Y(ScalarField(g, 1.0), ScalarField(g, 2.0), 0.7), 2.0 * std::log(2.0), 1e-15);
    EXPECT_EQ(entropy_Y(ScalarField(g, 1.0), ScalarField(g, 0.0), 0.7), 0.0);
    ScalarField A(g, 1.0);
    A(2, 3) = 0.0;
    EXPECT_EQ(code_of([&] { entropy_Y(A, ScalarField(g, 1.0), 0.7); }), ErrorCode::NonPositiveA);
}

TEST(Apriori, MassLawAndLowerBound) {
    const GridSpec g(1.0, 8);
    const ModelParams p = params();
    const DerivedBounds b{0.7, 1.0, 1.0};
    const AprioriCheck c0 = verify_apriori(0.0, ScalarField(g, 0.8), ScalarField(g, 1.0), b, p, 1.0, 1e-6);
    EXPECT_EQ(c0.mass_residual, 0.0);
    const AprioriCheck c1 = verify_apriori(0.1, ScalarField(g, 0.8), ScalarField(g, 1.0), b, p, 1.0, 1e-6);
    EXPECT_LE(c1.mass_residual, 1e-14);
    EXPECT_NEAR(c1.n_lower_bound, 1.0 - std::exp(-8.4), 1e-15);
    EXPECT_NEAR(c1.n_lower_bound, 0.99978, 5e-6);
    EXPECT_TRUE(c1.flags.a_min.ok && c1.flags.a_max.ok && c1.flags.n_lower.ok);

    // Start from a different mass: the law interpolates towards |Omega|.
    const double t = 0.01;
    const double law = std::exp(-84.0 * t) * 3.0 + (1.0 - std::exp(-84.0 * t));
    const AprioriCheck c2 = verify_apriori(t, ScalarField(g, 0.8), ScalarField(g, law), b, p, 3.0, 1e-6);
    EXPECT_NEAR(c2.mass_law, law, 1e-15);
    EXPECT_LE(c2.mass_residual, 1e-14);
}

TEST(Apriori, FlagsTrip) {
    const GridSpec g(1.0, 8);
    const ModelParams p = params();
    const DerivedBounds b{0.7, 1.0, 1.0};
    ScalarField A(g, 0.8), N(g, 1.0);
    A(0, 0) = 0.7 - 1e-3;
    A(1, 0) = 1.0 + 1e-3;
    N(2, 0) = 0.5;
    const AprioriCheck c = verify_apriori(1.0, A, N, b, p, 1.0, 1e-6);
    EXPECT_FALSE(c.flags.a_min.ok);
    EXPECT_FALSE(c.flags.a_max.ok);
    EXPECT_FALSE(c.flags.n_lower.ok);
    EXPECT_LT(c.flags.a_min.margin, 0.0);
    // Violations inside the tolerance pass.
    A(0, 0) = 0.7 - 1e-8;
    A(1, 0) = 1.0;
    EXPECT_TRUE(verify_apriori(1.0, A, ScalarField(g, 1.0), b, p, 1.0, 1e-6).flags.a_min.ok);
}

TEST(EnergyResiduals, SteadyStateBalances) {
    const GridSpec g(1.0, 16);
    const ModelParams p = params();
    const double a = steady_state(p).a_star;
    const ScalarField A(g, a), N(g, 1.0);
    const EnergyWindow w{0.9, 1.0, 1.1, &A, &N, &A, &N, &A, &N};
    const EnergyResiduals r = energy_residuals(w, p, 0.35);
    for (double v : r.r) EXPECT_LE(v, 1e-13);
    EXPECT_TRUE(r.id3_sign_ok);
    EXPECT_NEAR(r.id3_rhs, 0.0, 1e-14);
}

TEST(EnergyResiduals, SignFlagOnPositiveFields) {
    const GridSpec g(1.0, 16);
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(0.01, 5.0);
    const ModelParams p = params();
    for (int trial = 0; trial < 20; ++trial) {
        ScalarField A(g), N(g);
        for (double& v : A.values()) v = 0.7 + 0.3 * u(rng) / 5.0;
        for (double& v : N.values()) v = u(rng);
        const EnergyWindow w{0.0, 0.1, 0.2, &A, &N, &A, &N, &A, &N};
        const EnergyResiduals r = energy_residuals(w, p, 0.35);
        EXPECT_TRUE(r.id3_sign_ok);
        EXPECT_LE(r.id3_rhs, 0.0);
    }
}

TEST(EnergyResiduals, Errors) {
    const GridSpec g(1.0, 8);
    const ScalarField A(g, 0.8), N(g, 1.0), Z(g, 0.0);
    const ModelParams p = params();
    EXPECT_EQ(code_of([&] { energy_residuals({0.0, 0.1, 0.2, &A, &N, &A, &Z, &A, &N}, p, 0.35); }),
              ErrorCode::NonPositiveN);
    EXPECT_EQ(code_of([&] { energy_residuals({0.0, 0.1, 0.3, &A, &N, &A, &N, &A, &N}, p, 0.35); }),
              ErrorCode::InvalidArgument);
}

TEST(Probes, PoincareRatioOfCosine) {
    const GridSpec g(1.0, 256);
    const ScalarField u = ScalarField::from_function(g, [](double x, double) { return std::cos(kPi * x); });
    const PoincareProbe pp = poincare_probe(u);
    EXPECT_NEAR(pp.ratio_l1, 1.0 / (2.0 * std::sqrt(2.0)), 1e-4);
    EXPECT_FALSE(pp.sobolev_slack.has_value());
}

TEST(Probes, PoincareRatioIsShiftAndScaleInvariant) {
    const GridSpec g(1.0, 32);
    const CosineField cf = sample_cosine_field(5, 4, 1.0, g);
    const double base = poincare_probe(cf.field).ratio_l1;
    for (double shift : {-3.0, 0.5, 100.0}) {
        ScalarField v = cf.field;
        v += shift;
        EXPECT_NEAR(poincare_probe(v).ratio_l1, base, 1e-10 * base);
    }
    for (double scale : {-2.0, 1e-3, 7.5}) {
        ScalarField v = cf.field;
        v *= scale;
        EXPECT_NEAR(poincare_probe(v).ratio_l1, base, 1e-10 * base);
    }
}

TEST(Probes, SobolevSlackNonnegativeOnShiftedSamples) {
    const GridSpec g(1.0, 64);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        CosineField cf = sample_cosine_field(seed, 6, 1.0, g);
        cf.field += 1.0 + cf.coeffs.abs_sum();
        EXPECT_GE(sobolev_slack(cf.field), -1e-10) << seed;
        const PoincareProbe pp = poincare_probe(cf.field);
        ASSERT_TRUE(pp.sobolev_slack.has_value());
    }
}

TEST(Probes, DegenerateInputs) {
    const GridSpec g(1.0, 16);
    EXPECT_EQ(code_of([&] { poincare_probe(ScalarField(g, 2.0)); }), ErrorCode::ConstantField);
    EXPECT_EQ(code_of([&] { interpolation_probe(ScalarField(g, 2.0)); }), ErrorCode::DegenerateField);
    ScalarField u(g, 1.0);
    u(0, 0) = -1.0;
    EXPECT_EQ(code_of([&] { sobolev_slack(u); }), ErrorCode::NonPositiveField);
}

TEST(Probes, InterpolationRatioOfCosine) {
    const GridSpec g(1.0, 256);
    const ScalarField u = ScalarField::from_function(g, [](double x, double) { return std::cos(kPi * x); });
    EXPECT_NEAR(interpolation_probe(u).ratio_K, 3.0 / 16.0, 0.01 * 3.0 / 16.0);
}

TEST(Probes, SpectralHessianSingleMode) {
    CosineCoefficients c;
    c.L = 1.0;
    c.max_mode = 1;
    c.a = {0.0, 0.0, 0.0, 1.0};  // mode (1, 1)
    const SpectralHessian s = spectral_hessian(c);
    const double p4 = std::pow(kPi, 4);
    EXPECT_NEAR(s.uxx_sq, p4 / 4.0, 1e-12);
    EXPECT_NEAR(s.uyy_sq, p4 / 4.0, 1e-12);
    EXPECT_NEAR(s.uxy_sq, p4 / 4.0, 1e-12);
    EXPECT_NEAR(s.lap_sq, p4, 1e-12);
    EXPECT_NEAR(s.uxx_sq + s.uyy_sq + 2.0 * s.uxy_sq, s.lap_sq, 1e-12);
}

TEST(Probes, SpectralHessianAgainstQuadrature) {
    // Independent check of ||u_xy||^2 for a two-mode field by fine midpoint quadrature.
    CosineCoefficients c;
    c.L = 2.0;
    c.max_mode = 2;
    c.a.assign(9, 0.0);
    c.a[1 * 3 + 1] = 0.7;   // (1, 1)
    c.a[2 * 3 + 1] = -0.4;  // (1, 2)
    const int m = 400;
    const double h = c.L / m, w = kPi / c.L;
    double uxy = 0.0;
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < m; ++i) {
            const double x = (i + 0.5) * h, y = (j + 0.5) * h;
            const double v = 0.7 * w * w * std::sin(w * x) * std::sin(w * y) +
                             -0.4 * 2.0 * w * w * std::sin(w * x) * std::sin(2.0 * w * y);
            uxy += v * v * h * h;
        }
    }
    EXPECT_NEAR(spectral_hessian(c).uxy_sq, uxy, 1e-4 * uxy);
}

TEST(Probes, SampledBounds) {
    const GridSpec g(1.0, 64);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const CosineField cf = sample_cosine_field(seed, 6, 1.0, g);
        EXPECT_LE(poincare_probe(cf.field).ratio_l1, std::sqrt(1.5) + 1e-10);
        const InterpolationProbe ip = interpolation_probe(cf.field, &cf.coeffs);
        EXPECT_LE(ip.ratio_K, 12.0 + 1e-10);
        ASSERT_TRUE(ip.fourier_gap.has_value());
        EXPECT_LE(*ip.fourier_gap, 1e-10);
    }
}

TEST(Records, CsvLayout) {
    EXPECT_EQ(diagnostics_csv_header(), "t,mass_N,minA,maxA,minN,grad_A_l2sq,phi,y_entropy,mass_residual,r1,r2,r3,r4,flags");
    DiagnosticsRecord rec;
    rec.t = 0.5;
    rec.mass_N = 1.0;
    const std::string row = to_csv_row(rec);
    EXPECT_EQ(std::count(row.begin(), row.end(), ','), 13);
    EXPECT_EQ(row.rfind("0.5,1,", 0), 0u);

    rec.bound_flags = BoundFlags{};
    rec.bound_flags->n_lower.ok = false;
    rec.energy = EnergyResiduals{};
    const std::string row2 = to_csv_row(rec);
    EXPECT_NE(row2.find("amin=ok;amax=ok;npos=fail;id3=ok"), std::string::npos);
}
