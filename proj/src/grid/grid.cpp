#include "hotspot/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hotspot {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::NonPositiveField: return "NonPositiveField";
        case ErrorCode::InvalidExponent: return "InvalidExponent";
        case ErrorCode::GridMismatch: return "GridMismatch";
        case ErrorCode::SolveFailure: return "SolveFailure";
        case ErrorCode::UnresolvableMode: return "UnresolvableMode";
        case ErrorCode::NonPositiveA: return "NonPositiveA";
        case ErrorCode::NegativeN: return "NegativeN";
        case ErrorCode::NonPositiveN: return "NonPositiveN";
        case ErrorCode::FloorViolation: return "FloorViolation";
        case ErrorCode::InvalidInitialData: return "InvalidInitialData";
        case ErrorCode::PositivityBreach: return "PositivityBreach";
        case ErrorCode::NonFinite: return "NonFinite";
        case ErrorCode::NegativeEntropyIntegrand: return "NegativeEntropyIntegrand";
        case ErrorCode::ConstantField: return "ConstantField";
        case ErrorCode::DegenerateField: return "DegenerateField";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

GridSpec::GridSpec(double L, int n) : L_(L), n_(n) {
    if (!(L > 0.0) || !std::isfinite(L)) {
        throw Error(ErrorCode::InvalidArgument, "grid side length must be positive and finite");
    }
    if (n < 8) {
        throw Error(ErrorCode::InvalidArgument, "grid needs at least 8 cells per side");
    }
}

void require_same_grid(const GridSpec& a, const GridSpec& b) {
    if (!(a == b)) {
        std::ostringstream msg;
        msg << "operands live on different grids (L=" << a.L() << ", n=" << a.n() << ") vs (L="
            << b.L() << ", n=" << b.n() << ")";
        throw Error(ErrorCode::GridMismatch, msg.str());
    }
}

// ---------------------------------------------------------------------------

ScalarField::ScalarField(const GridSpec& grid, double fill) : grid_(grid), values_(grid.cells(), fill) {}

ScalarField::ScalarField(const GridSpec& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.cells()) {
        throw Error(ErrorCode::GridMismatch, "value count does not match grid size");
    }
}

ScalarField ScalarField::from_function(const GridSpec& grid,
                                       const std::function<double(double, double)>& f) {
    ScalarField u(grid);
    for (int j = 0; j < grid.n(); ++j) {
        for (int i = 0; i < grid.n(); ++i) {
            u(i, j) = f(grid.x(i), grid.y(j));
        }
    }
    return u;
}

double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }

bool ScalarField::all_finite() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

void ScalarField::require_finite(std::string_view what) const {
    if (!all_finite()) {
        throw Error(ErrorCode::NonFinite, std::string(what) + " contains NaN or Inf");
    }
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
    require_same_grid(grid_, other.grid_);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
    return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
    require_same_grid(grid_, other.grid_);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
    return *this;
}

ScalarField& ScalarField::operator*=(double s) noexcept {
    for (double& v : values_) v *= s;
    return *this;
}

ScalarField& ScalarField::operator+=(double s) noexcept {
    for (double& v : values_) v += s;
    return *this;
}

// ---------------------------------------------------------------------------

VectorField::VectorField(const GridSpec& grid)
    : grid_(grid),
      fx_(static_cast<std::size_t>(grid.n() + 1) * grid.n(), 0.0),
      fy_(static_cast<std::size_t>(grid.n()) * (grid.n() + 1), 0.0) {}

double VectorField::max_abs() const noexcept {
    double m = 0.0;
    for (double v : fx_) m = std::max(m, std::abs(v));
    for (double v : fy_) m = std::max(m, std::abs(v));
    return m;
}

void VectorField::zero_boundary() noexcept {
    const int n = this->n();
    for (int j = 0; j < n; ++j) {
        fx(0, j) = 0.0;
        fx(n, j) = 0.0;
    }
    for (int i = 0; i < n; ++i) {
        fy(i, 0) = 0.0;
        fy(i, n) = 0.0;
    }
}

bool VectorField::boundary_is_zero() const noexcept {
    const int n = this->n();
    for (int k = 0; k < n; ++k) {
        if (fx(0, k) != 0.0 || fx(n, k) != 0.0 || fy(k, 0) != 0.0 || fy(k, n) != 0.0) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------

VectorField gradient(const ScalarField& u) {
    const int n = u.n();
    const double h = u.grid().h();
    VectorField g(u.grid());
    for (int j = 0; j < n; ++j) {
        for (int i = 1; i < n; ++i) g.fx(i, j) = (u(i, j) - u(i - 1, j)) / h;
    }
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < n; ++i) g.fy(i, j) = (u(i, j) - u(i, j - 1)) / h;
    }
    return g;
}

ScalarField divergence(const VectorField& F) {
    const int n = F.n();
    const double h = F.grid().h();
    ScalarField d(F.grid());
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            d(i, j) = (F.fx(i + 1, j) - F.fx(i, j)) / h + (F.fy(i, j + 1) - F.fy(i, j)) / h;
        }
    }
    return d;
}

ScalarField laplacian(const ScalarField& u) { return divergence(gradient(u)); }

VectorField face_product(const VectorField& a, const VectorField& b) {
    require_same_grid(a.grid(), b.grid());
    const int n = a.n();
    VectorField out(a.grid());
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i <= n; ++i) out.fx(i, j) = a.fx(i, j) * b.fx(i, j);
    }
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i < n; ++i) out.fy(i, j) = a.fy(i, j) * b.fy(i, j);
    }
    return out;
}

VectorField face_average(const ScalarField& u) {
    const int n = u.n();
    VectorField f(u.grid());
    for (int j = 0; j < n; ++j) {
        f.fx(0, j) = u(0, j);
        for (int i = 1; i < n; ++i) f.fx(i, j) = 0.5 * (u(i - 1, j) + u(i, j));
        f.fx(n, j) = u(n - 1, j);
    }
    for (int i = 0; i < n; ++i) {
        f.fy(i, 0) = u(i, 0);
        f.fy(i, n) = u(i, n - 1);
    }
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < n; ++i) f.fy(i, j) = 0.5 * (u(i, j - 1) + u(i, j));
    }
    return f;
}

}  // namespace hotspot
