#include <cmath>
#include <numbers>

#include "hotspot/analysis.hpp"

namespace hotspot {

PoincareProbe poincare_probe(const ScalarField& u) {
    const double scale = std::max(1.0, lp_norm(u, INFINITY));
    const double grad = grad_l1(u);
    if (osc(u) <= 1e-14 * scale || grad == 0.0) {
        throw Error(ErrorCode::ConstantField, "Poincare ratio is undefined for a constant field");
    }
    ScalarField centred = u;
    centred += -mean(u);
    PoincareProbe out{lp_norm(centred, 2.0) / grad, std::nullopt};
    if (u.min() > 0.0) out.sobolev_slack = sobolev_slack(u);
    return out;
}

double sobolev_slack(const ScalarField& u, double mu_sq) {
    if (!(u.min() > 0.0)) {
        throw Error(ErrorCode::NonPositiveField, "Sobolev slack needs a strictly positive field");
    }
    const double l1 = lp_norm(u, 1.0);
    const double l2 = lp_norm(u, 2.0);
    return mu_sq * l1 * fisher(u) + l1 * l1 / u.grid().area() - l2 * l2;
}

SpectralHessian spectral_hessian(const CosineCoefficients& c) {
    const double k0 = std::numbers::pi / c.L;
    const double L2 = c.L * c.L;
    // \int_0^L cos^2(j pi x / L) dx = L for j = 0 and L/2 otherwise; sin^2 gives 0 and L/2.
    auto cos_weight = [](int j) { return j == 0 ? 1.0 : 0.5; };
    auto sin_weight = [](int j) { return j == 0 ? 0.0 : 0.5; };
    SpectralHessian s{0.0, 0.0, 0.0, 0.0};
    for (int k = 0; k <= c.max_mode; ++k) {
        for (int j = 0; j <= c.max_mode; ++j) {
            const double a2 = c(j, k) * c(j, k);
            const double wx = std::pow(j * k0, 2);
            const double wy = std::pow(k * k0, 2);
            const double cc = a2 * L2 * cos_weight(j) * cos_weight(k);
            s.uxx_sq += wx * wx * cc;
            s.uyy_sq += wy * wy * cc;
            s.uxy_sq += wx * wy * a2 * L2 * sin_weight(j) * sin_weight(k);
            s.lap_sq += (wx + wy) * (wx + wy) * cc;
        }
    }
    return s;
}

InterpolationProbe interpolation_probe(const ScalarField& u, const CosineCoefficients* coeffs) {
    const double o = osc(u);
    const double lap = laplacian_l2sq(u);
    const double L = u.grid().L();
    const double scale = std::max(1.0, lp_norm(u, INFINITY));
    // Compare against the smallest non-trivial mode's energy at this oscillation.
    if (o <= 1e-14 * scale || lap <= 1e-24 * o * o * u.grid().area() / std::pow(L, 4)) {
        throw Error(ErrorCode::DegenerateField, "interpolation ratio needs osc(u) > 0 and Lap u != 0");
    }
    InterpolationProbe out{grad4(u) / (o * o * lap), std::nullopt};
    if (coeffs != nullptr) {
        const SpectralHessian s = spectral_hessian(*coeffs);
        if (s.lap_sq > 0.0) {
            out.fourier_gap = std::abs(s.uxx_sq + s.uyy_sq + 2.0 * s.uxy_sq - s.lap_sq) / s.lap_sq;
        } else {
            out.fourier_gap = 0.0;
        }
    }
    return out;
}

}  // namespace hotspot
