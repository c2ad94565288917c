#include <algorithm>
#include <cmath>
#include <limits>

#include "hotspot/grid.hpp"

namespace hotspot {

namespace {

// Gradient components averaged from the two bracketing faces to the cell centre.
template <typename F>
double accumulate_cell_gradient(const ScalarField& u, F&& integrand) {
    const VectorField g = gradient(u);
    const int n = u.n();
    const double h2 = u.grid().h() * u.grid().h();
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const double gx = 0.5 * (g.fx(i, j) + g.fx(i + 1, j));
            const double gy = 0.5 * (g.fy(i, j) + g.fy(i, j + 1));
            sum += integrand(gx, gy);
        }
    }
    return sum * h2;
}

}  // namespace

double integral(const ScalarField& u) {
    double sum = 0.0;
    for (double v : u.values()) sum += v;
    return sum * u.grid().h() * u.grid().h();
}

double mean(const ScalarField& u) { return integral(u) / u.grid().area(); }

double lp_norm(const ScalarField& u, double p) {
    if (!(p >= 1.0)) {
        throw Error(ErrorCode::InvalidExponent, "Lp norm needs p >= 1");
    }
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : u.values()) m = std::max(m, std::abs(v));
        return m;
    }
    double sum = 0.0;
    if (p == 1.0) {
        for (double v : u.values()) sum += std::abs(v);
    } else if (p == 2.0) {
        for (double v : u.values()) sum += v * v;
    } else {
        for (double v : u.values()) sum += std::pow(std::abs(v), p);
    }
    sum *= u.grid().h() * u.grid().h();
    return p == 1.0 ? sum : std::pow(sum, 1.0 / p);
}

double osc(const ScalarField& u) { return u.max() - u.min(); }

double fisher(const ScalarField& u) {
    if (!(u.min() > 0.0)) {
        throw Error(ErrorCode::NonPositiveField, "Fisher information needs a strictly positive field");
    }
    const VectorField g = gradient(u);
    const int n = u.n();
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
        for (int i = 1; i < n; ++i) {
            const double gx = g.fx(i, j);
            sum += gx * gx / (0.5 * (u(i - 1, j) + u(i, j)));
        }
    }
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const double gy = g.fy(i, j);
            sum += gy * gy / (0.5 * (u(i, j - 1) + u(i, j)));
        }
    }
    return sum * u.grid().h() * u.grid().h();
}

double grad4(const ScalarField& u) {
    return accumulate_cell_gradient(u, [](double gx, double gy) {
        const double s = gx * gx + gy * gy;
        return s * s;
    });
}

double grad_l1(const ScalarField& u) {
    return accumulate_cell_gradient(u, [](double gx, double gy) { return std::hypot(gx, gy); });
}

double face_inner(const VectorField& a, const VectorField& b) {
    require_same_grid(a.grid(), b.grid());
    double sum = 0.0;
    const auto ax = a.x_components();
    const auto bx = b.x_components();
    for (std::size_t k = 0; k < ax.size(); ++k) sum += ax[k] * bx[k];
    const auto ay = a.y_components();
    const auto by = b.y_components();
    for (std::size_t k = 0; k < ay.size(); ++k) sum += ay[k] * by[k];
    return sum * a.grid().h() * a.grid().h();
}

double inner(const ScalarField& a, const ScalarField& b) {
    require_same_grid(a.grid(), b.grid());
    const auto av = a.values();
    const auto bv = b.values();
    double sum = 0.0;
    for (std::size_t k = 0; k < av.size(); ++k) sum += av[k] * bv[k];
    return sum * a.grid().h() * a.grid().h();
}

double grad_l2sq(const ScalarField& u) {
    const VectorField g = gradient(u);
    return face_inner(g, g);
}

double laplacian_l2sq(const ScalarField& u) {
    const ScalarField lap = laplacian(u);
    return inner(lap, lap);
}

double field_functional(const ScalarField& u, Functional kind, double p) {
    switch (kind) {
        case Functional::Integral: return integral(u);
        case Functional::Mean: return mean(u);
        case Functional::LpNorm: return lp_norm(u, p);
        case Functional::Osc: return osc(u);
        case Functional::Fisher: return fisher(u);
        case Functional::Grad4: return grad4(u);
        case Functional::GradL1: return grad_l1(u);
        case Functional::GradL2Sq: return grad_l2sq(u);
        case Functional::LaplacianL2Sq: return laplacian_l2sq(u);
    }
    return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace hotspot
