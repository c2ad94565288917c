#include <cmath>

#include "hotspot/analysis.hpp"

namespace hotspot {

EntropyRegime entropy_params(const ModelParams& p, const DerivedBounds& b, double mu_sq, double K) {
    if (!(mu_sq > 0.0) || !(K > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "mu^2 and K must be positive");
    }
    const double a_max4 = std::pow(b.a_max, 4);
    const double sigma = 2.0 * p.psi * p.psi / p.eta * a_max4 * mu_sq * b.n1_max;
    const double spread = b.a_max - b.a_min;
    const double defect = K * std::pow(p.chi, 4) / (p.eta * p.eta) * mu_sq * mu_sq * p.psi * p.psi *
                          b.n1_max * b.n1_max * a_max4 / std::pow(b.a_min, 4) * spread * spread;
    const double c1 = 0.5 * p.eta * (1.0 - defect);
    if (c1 > 0.0) return EntropyParams{sigma, c1, std::min(p.omega, 2.0)};
    return InfeasibleRegime{sigma, c1};
}

double entropy_sigma(const EntropyRegime& regime) {
    return std::visit([](const auto& r) { return r.sigma; }, regime);
}

double entropy_phi(const ScalarField& A, const ScalarField& N, double sigma) {
    require_same_grid(A.grid(), N.grid());
    double sum = 0.0;
    for (double n : N.values()) {
        double v;
        if (n == 0.0) {
            v = 1.0;
        } else if (n > 0.0) {
            v = n * std::log(n) - n + 1.0;
        } else {
            throw Error(ErrorCode::NegativeEntropyIntegrand, "entropy needs N >= 0");
        }
        if (v < -1e-12) {
            throw Error(ErrorCode::NegativeEntropyIntegrand, "N log N - N + 1 evaluated below zero");
        }
        sum += v;
    }
    const double h = N.grid().h();
    return sigma * sum * h * h + 0.5 * grad_l2sq(A);
}

double choose_c_quadratic(double c, double chi, double eta) {
    const double a = (1.0 + eta) * (1.0 + eta);
    return a * c * c - 2.0 * c * (chi + 2.0 * eta - chi * eta) + chi * chi;
}

std::optional<double> choose_c(double chi, double eta) {
    if (!(chi > 0.0) || !(eta > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "choose_c needs chi, eta > 0");
    }
    const double c = (chi + 2.0 * eta - chi * eta) / ((1.0 + eta) * (1.0 + eta));
    if (choose_c_quadratic(c, chi, eta) <= 1e-14) return c;
    return std::nullopt;
}

double entropy_Y(const ScalarField& A, const ScalarField& N, double c) {
    require_same_grid(A.grid(), N.grid());
    if (!(A.min() > 0.0)) throw Error(ErrorCode::NonPositiveA, "entropy Y needs A > 0");
    const auto av = A.values();
    const auto nv = N.values();
    double sum = 0.0;
    for (std::size_t k = 0; k < av.size(); ++k) {
        if (nv[k] < 0.0) throw Error(ErrorCode::NegativeN, "entropy Y needs N >= 0");
        if (nv[k] == 0.0) continue;
        sum += nv[k] * (std::log(nv[k]) - c * std::log(av[k]));
    }
    const double h = A.grid().h();
    return sum * h * h;
}

// ---------------------------------------------------------------------------

AprioriCheck verify_apriori(double t, const ScalarField& A, const ScalarField& N, const DerivedBounds& b,
                            const ModelParams& p, double n0_mass, double tol) {
    require_same_grid(A.grid(), N.grid());
    AprioriCheck out{};
    const double spread = b.a_max - b.a_min;
    const double decay = std::exp(-p.omega * t);
    const double area = A.grid().area();

    out.flags.a_min.margin = A.min() - b.a_min;
    out.flags.a_min.ok = out.flags.a_min.margin >= -tol * spread;
    out.flags.a_max.margin = b.a_max - A.max();
    out.flags.a_max.ok = out.flags.a_max.margin >= -tol * spread;
    out.n_lower_bound = 1.0 - decay;
    out.flags.n_lower.margin = N.min() - out.n_lower_bound;
    out.flags.n_lower.ok = out.flags.n_lower.margin >= -tol;

    out.mass_law = decay * n0_mass + area * (1.0 - decay);
    out.mass_residual = std::abs(integral(N) - out.mass_law) / area;
    return out;
}

}  // namespace hotspot
