#include <cmath>
#include <numbers>
#include <random>

#include "hotspot/grid.hpp"

namespace hotspot {

double CosineCoefficients::abs_sum() const {
    double s = 0.0;
    for (double v : a) s += std::abs(v);
    return s;
}

ScalarField synthesize(const CosineCoefficients& coeffs, const GridSpec& grid) {
    const int n = grid.n();
    const int m = coeffs.max_mode;
    const double kx = std::numbers::pi / coeffs.L;
    // Separable evaluation: tabulate cos(j pi x_i / L) once per axis.
    std::vector<double> c(static_cast<std::size_t>(m + 1) * n);
    for (int j = 0; j <= m; ++j) {
        for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(j) * n + i] = std::cos(j * kx * grid.x(i));
    }
    ScalarField u(grid);
    for (int k = 0; k <= m; ++k) {
        for (int j = 0; j <= m; ++j) {
            const double a = coeffs(j, k);
            if (a == 0.0) continue;
            for (int jj = 0; jj < n; ++jj) {
                const double cy = a * c[static_cast<std::size_t>(k) * n + jj];
                for (int ii = 0; ii < n; ++ii) u(ii, jj) += cy * c[static_cast<std::size_t>(j) * n + ii];
            }
        }
    }
    return u;
}

CosineField sample_cosine_field(std::uint64_t seed, int max_mode, double amplitude,
                                const GridSpec& grid) {
    if (max_mode < 0 || 2 * max_mode >= grid.n()) {
        throw Error(ErrorCode::UnresolvableMode, "cosine modes must satisfy 0 <= max_mode < n/2");
    }
    if (!(amplitude > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "cosine amplitude must be positive");
    }
    CosineCoefficients coeffs;
    coeffs.L = grid.L();
    coeffs.max_mode = max_mode;
    coeffs.a.resize(static_cast<std::size_t>(max_mode + 1) * (max_mode + 1));

    // Map raw 64-bit draws to [-1, 1) ourselves; std::uniform_real_distribution
    // is not reproducible across standard library implementations.
    std::mt19937_64 rng(seed);
    for (double& a : coeffs.a) {
        const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        a = amplitude * (2.0 * unit - 1.0);
    }
    ScalarField field = synthesize(coeffs, grid);
    return CosineField{std::move(field), std::move(coeffs)};
}

}  // namespace hotspot
