#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "hotspot/model.hpp"

namespace hotspot {

std::string_view to_string(Hypothesis h) noexcept {
    switch (h) {
        case Hypothesis::SourceNonnegative: return "source-nonnegative";
        case Hypothesis::InvariantBounds: return "invariant-bounds";
        case Hypothesis::SourceGrowth: return "source-growth";
        case Hypothesis::ReactionGrowth: return "reaction-growth";
        case Hypothesis::SensitivityRegularity: return "sensitivity-regularity";
    }
    return "unknown";
}

namespace {

constexpr int kGridPoints = 17;

// Relative slack for sign and envelope comparisons at sampled points.
double slack(double scale) { return 1e-12 * std::max(1.0, std::abs(scale)); }

struct Checker {
    const GeneralModel& m;
    const HypothesisSampling& s;
    HypothesisReport report;

    bool fail(Hypothesis h, double a, double n, const std::string& what) {
        report.passed = false;
        report.failed = h;
        report.a = a;
        report.n = n;
        std::ostringstream msg;
        msg << "counterexample for " << to_string(h) << " at (A=" << a << ", N=" << n << "): " << what;
        report.message = msg.str();
        return false;
    }

    double first_derivative(double a) const {
        if (m.dh) return m.dh(a);
        const double step = 1e-6 * std::max(1.0, std::abs(a));
        const double dir = a + step <= m.a_max ? 1.0 : -1.0;
        return dir * (m.h(a + dir * step) - m.h(a)) / step;
    }

    double second_derivative(double a) const {
        if (m.d2h) return m.d2h(a);
        const double step = 1e-4 * std::max(1.0, std::abs(a));
        const double dir = a + 2.0 * step <= m.a_max ? 1.0 : -1.0;
        return (m.h(a + 2.0 * dir * step) - 2.0 * m.h(a + dir * step) + m.h(a)) / (step * step);
    }

    bool check_a(double a) {
        ++report.points_checked;
        const double g0 = m.g(a, 0.0);
        if (!std::isfinite(g0) || g0 < -slack(g0)) {
            std::ostringstream w;
            w << "g(A, 0) = " << g0 << " < 0";
            return fail(Hypothesis::SourceNonnegative, a, 0.0, w.str());
        }
        const double d1 = first_derivative(a);
        const double d2 = second_derivative(a);
        if (!std::isfinite(d1) || std::abs(d1) > s.derivative_limit) {
            std::ostringstream w;
            w << "suspected unbounded h'(A) = " << d1;
            return fail(Hypothesis::SensitivityRegularity, a, 0.0, w.str());
        }
        if (!std::isfinite(d2) || std::abs(d2) > s.derivative_limit) {
            std::ostringstream w;
            w << "suspected unbounded h''(A) = " << d2;
            return fail(Hypothesis::SensitivityRegularity, a, 0.0, w.str());
        }
        return true;
    }

    bool check_bounds_at(double n) {
        ++report.points_checked;
        const double lo = m.f(m.a_min, n) - m.a_min;
        if (!std::isfinite(lo) || lo < -slack(m.a_min)) {
            std::ostringstream w;
            w << "f(a_min, N) - a_min = " << lo << " < 0";
            return fail(Hypothesis::InvariantBounds, m.a_min, n, w.str());
        }
        const double hi = m.f(m.a_max, n) - m.a_max;
        if (!std::isfinite(hi) || hi > slack(m.a_max)) {
            std::ostringstream w;
            w << "f(a_max, N) - a_max = " << hi << " > 0";
            return fail(Hypothesis::InvariantBounds, m.a_max, n, w.str());
        }
        return true;
    }

    bool check_growth(double a, double n) {
        ++report.points_checked;
        const GrowthEnvelopes& e = m.envelopes;
        const double g = m.g(a, n);
        const double g_env = e.g1(a) * std::pow(n, 1.0 - e.delta) + e.g2(a);
        if (!std::isfinite(g) || std::abs(g) > g_env + slack(g_env)) {
            std::ostringstream w;
            w << "|g| = " << std::abs(g) << " exceeds declared envelope " << g_env;
            return fail(Hypothesis::SourceGrowth, a, n, w.str());
        }
        const double f = m.f(a, n);
        const double f_env = e.f1(a) * n + e.f2(a);
        if (!std::isfinite(f) || std::abs(f) > f_env + slack(f_env)) {
            std::ostringstream w;
            w << "|f| = " << std::abs(f) << " exceeds declared envelope " << f_env;
            return fail(Hypothesis::ReactionGrowth, a, n, w.str());
        }
        return true;
    }
};

}  // namespace

HypothesisReport validate_general_hypotheses(const GeneralModel& model, const HypothesisSampling& sampling) {
    if (!(model.a_min > 0.0) || !(model.a_max > model.a_min)) {
        throw Error(ErrorCode::InvalidArgument, "declared bounds must satisfy 0 < a_min < a_max");
    }
    if (!model.f || !model.g || !model.h) {
        throw Error(ErrorCode::InvalidArgument, "general model needs f, g and h");
    }
    const GrowthEnvelopes& e = model.envelopes;
    if (!e.g1 || !e.g2 || !e.f1 || !e.f2 || !(e.delta > 0.0 && e.delta < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "growth envelopes g1, g2, f1, f2 and delta in (0, 1) must be declared");
    }

    Checker c{model, sampling, {}};
    std::vector<double> as, ns;
    for (int k = 0; k < kGridPoints; ++k) {
        const double t = static_cast<double>(k) / (kGridPoints - 1);
        as.push_back(model.a_min + t * (model.a_max - model.a_min));
        ns.push_back(t * sampling.n_big);
    }
    std::mt19937_64 rng(sampling.seed);
    auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    for (int k = 0; k < sampling.n_samples; ++k) {
        as.push_back(model.a_min + unit() * (model.a_max - model.a_min));
        ns.push_back(unit() * sampling.n_big);
    }

    for (double a : as) {
        if (!c.check_a(a)) return c.report;
    }
    for (double n : ns) {
        if (!c.check_bounds_at(n)) return c.report;
    }
    for (int k = 0; k < kGridPoints; ++k) {
        for (int l = 0; l < kGridPoints; ++l) {
            if (!c.check_growth(as[k], ns[l])) return c.report;
        }
    }
    for (std::size_t k = kGridPoints; k < as.size(); ++k) {
        if (!c.check_growth(as[k], ns[k])) return c.report;
    }
    c.report.message = "no counterexample found at sampled points";
    return c.report;
}

GeneralModel as_general(const ModelParams& p, const DerivedBounds& bounds) {
    GeneralModel m;
    m.eta = p.eta;
    m.omega = p.omega;
    m.f = [p](double a, double n) { return p.psi * n * a * (1.0 - a) + p.atilde; };
    m.g = [p](double, double) { return p.omega; };
    m.h = [p](double a) { return p.chi * std::log(a); };
    m.dh = [p](double a) { return p.chi / a; };
    m.d2h = [p](double a) { return -p.chi / (a * a); };
    m.a_min = bounds.a_min;
    m.a_max = bounds.a_max;

    // max |A(1-A)| over [a_min, a_max] is attained at an endpoint or at A = 1/2.
    auto logistic = [](double a) { return std::abs(a * (1.0 - a)); };
    double lmax = std::max(logistic(bounds.a_min), logistic(bounds.a_max));
    if (bounds.a_min <= 0.5 && 0.5 <= bounds.a_max) lmax = std::max(lmax, 0.25);
    m.envelopes.delta = 0.5;
    m.envelopes.g1 = [](double) { return 0.0; };
    m.envelopes.g2 = [p](double) { return p.omega; };
    m.envelopes.f1 = [p, lmax](double) { return p.psi * lmax; };
    m.envelopes.f2 = [p](double) { return p.atilde; };
    return m;
}

}  // namespace hotspot
