#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "hotspot/grid.hpp"

namespace hotspot {

namespace {

constexpr double kResidualTolerance = 1e-10;

struct DctPlans {
    fftw_plan forward = nullptr;  // DCT-II in both directions
    fftw_plan inverse = nullptr;  // DCT-III in both directions
};

// FFTW planning is not thread-safe; execution on fresh arrays is. Plans are
// created once per grid size and reused through the new-array execute interface.
const DctPlans& plans_for(int n) {
    static std::mutex mutex;
    static std::map<int, DctPlans> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::vector<double> in(static_cast<std::size_t>(n) * n), out(in.size());
    DctPlans p;
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    p.forward = fftw_plan_r2r_2d(n, n, in.data(), out.data(), FFTW_REDFT10, FFTW_REDFT10, flags);
    p.inverse = fftw_plan_r2r_2d(n, n, in.data(), out.data(), FFTW_REDFT01, FFTW_REDFT01, flags);
    if (p.forward == nullptr || p.inverse == nullptr) {
        throw Error(ErrorCode::SolveFailure, "could not create cosine transform plans");
    }
    return cache.emplace(n, p).first->second;
}

double symbol_1d(double h, int n, int k) {
    const double s = std::sin(std::numbers::pi * k / (2.0 * n));
    return 4.0 / (h * h) * s * s;
}

}  // namespace

double laplacian_symbol(const GridSpec& grid, int j, int k) {
    return symbol_1d(grid.h(), grid.n(), j) + symbol_1d(grid.h(), grid.n(), k);
}

double helmholtz_residual(const ScalarField& u, const ScalarField& rhs, double d, double lambda,
                          double dt) {
    require_same_grid(u.grid(), rhs.grid());
    const ScalarField lap = laplacian(u);
    const auto uv = u.values();
    const auto lv = lap.values();
    const auto rv = rhs.values();
    double res = 0.0;
    double scale = 0.0;
    for (std::size_t k = 0; k < uv.size(); ++k) {
        const double r = (1.0 + dt * lambda) * uv[k] - dt * d * lv[k] - rv[k];
        res = std::max(res, std::abs(r));
        scale = std::max(scale, std::abs(rv[k]));
    }
    if (scale == 0.0) return res;
    return res / scale;
}

ScalarField helmholtz_solve(const ScalarField& rhs, double d, double lambda, double dt) {
    if (!(dt > 0.0) || !(d >= 0.0) || !(lambda >= 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "Helmholtz solve needs dt > 0, d >= 0, lambda >= 0");
    }
    const GridSpec& grid = rhs.grid();
    const int n = grid.n();
    const DctPlans& plans = plans_for(n);

    std::vector<double> coeff(grid.cells());
    std::vector<double> in(rhs.values().begin(), rhs.values().end());
    fftw_execute_r2r(plans.forward, in.data(), coeff.data());

    const double diag = 1.0 + dt * lambda;
    const double norm = 1.0 / (4.0 * n * n);
    std::vector<double> sym(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) sym[k] = symbol_1d(grid.h(), n, k);
    // FFTW's row-major 2-D layout: the first (slow) dimension is j (y), the fast is i (x).
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            coeff[static_cast<std::size_t>(j) * n + i] *= norm / (diag + dt * d * (sym[i] + sym[j]));
        }
    }

    ScalarField u(grid);
    fftw_execute_r2r(plans.inverse, coeff.data(), u.values().data());

    const double res = helmholtz_residual(u, rhs, d, lambda, dt);
    if (!(res <= kResidualTolerance)) {
        std::ostringstream msg;
        msg << "relative residual " << res << " exceeds " << kResidualTolerance;
        throw Error(ErrorCode::SolveFailure, msg.str());
    }
    return u;
}

}  // namespace hotspot
