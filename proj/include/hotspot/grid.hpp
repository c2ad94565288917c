#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "hotspot/error.hpp"

namespace hotspot {

/// Uniform cell-centred discretisation of the square (0, L)^2 with n cells per side.
/// The spacing is always derived from (L, n) so that h * n == L.
class GridSpec {
public:
    GridSpec(double L, int n);

    double L() const noexcept { return L_; }
    int n() const noexcept { return n_; }
    double h() const noexcept { return L_ / n_; }
    double area() const noexcept { return L_ * L_; }
    std::size_t cells() const noexcept { return static_cast<std::size_t>(n_) * n_; }

    // Cell centre coordinates.
    double x(int i) const noexcept { return (i + 0.5) * h(); }
    double y(int j) const noexcept { return (j + 0.5) * h(); }

    friend bool operator==(const GridSpec&, const GridSpec&) = default;

private:
    double L_;
    int n_;
};

/// Cell-centred scalar field. Storage is row-major with y as the slow index:
/// value(i, j) lives at ((i + 1/2) h, (j + 1/2) h).
class ScalarField {
public:
    explicit ScalarField(const GridSpec& grid, double fill = 0.0);
    ScalarField(const GridSpec& grid, std::vector<double> values);

    static ScalarField from_function(const GridSpec& grid,
                                     const std::function<double(double, double)>& f);

    const GridSpec& grid() const noexcept { return grid_; }
    int n() const noexcept { return grid_.n(); }

    double& operator()(int i, int j) noexcept { return values_[index(i, j)]; }
    double operator()(int i, int j) const noexcept { return values_[index(i, j)]; }

    std::span<double> values() noexcept { return values_; }
    std::span<const double> values() const noexcept { return values_; }

    double min() const;
    double max() const;
    bool all_finite() const noexcept;

    // Throws NonFinite if any cell holds NaN or Inf.
    void require_finite(std::string_view what) const;

    ScalarField& operator+=(const ScalarField& other);
    ScalarField& operator-=(const ScalarField& other);
    ScalarField& operator*=(double s) noexcept;
    ScalarField& operator+=(double s) noexcept;

    friend ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
    friend ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
    friend ScalarField operator*(double s, ScalarField a) { return a *= s; }

    std::size_t index(int i, int j) const noexcept {
        return static_cast<std::size_t>(j) * grid_.n() + i;
    }

private:
    GridSpec grid_;
    std::vector<double> values_;
};

/// Face-centred (staggered) vector field. x components live on the
/// (n+1) x n vertical faces, y components on the n x (n+1) horizontal faces.
/// Outer boundary faces carry zero normal component (no flux).
class VectorField {
public:
    explicit VectorField(const GridSpec& grid);

    const GridSpec& grid() const noexcept { return grid_; }
    int n() const noexcept { return grid_.n(); }

    // x-face between cells (i-1, j) and (i, j), i in [0, n].
    double& fx(int i, int j) noexcept { return fx_[static_cast<std::size_t>(j) * (n() + 1) + i]; }
    double fx(int i, int j) const noexcept { return fx_[static_cast<std::size_t>(j) * (n() + 1) + i]; }
    // y-face between cells (i, j-1) and (i, j), j in [0, n].
    double& fy(int i, int j) noexcept { return fy_[static_cast<std::size_t>(j) * n() + i]; }
    double fy(int i, int j) const noexcept { return fy_[static_cast<std::size_t>(j) * n() + i]; }

    std::span<const double> x_components() const noexcept { return fx_; }
    std::span<const double> y_components() const noexcept { return fy_; }

    // Max |component| over all faces.
    double max_abs() const noexcept;
    // Sets the outer boundary faces to zero.
    void zero_boundary() noexcept;
    bool boundary_is_zero() const noexcept;

private:
    GridSpec grid_;
    std::vector<double> fx_;
    std::vector<double> fy_;
};

void require_same_grid(const GridSpec& a, const GridSpec& b);

// ---------------------------------------------------------------------------
// Differential operators (second-order, Neumann via mirror ghosts).

VectorField gradient(const ScalarField& u);
ScalarField divergence(const VectorField& F);
// Exactly divergence(gradient(u)).
ScalarField laplacian(const ScalarField& u);

// Face-wise product: out.fx = a.fx * b.fx etc.
VectorField face_product(const VectorField& a, const VectorField& b);
// Arithmetic face average of a cell field; boundary faces are set to the adjacent cell value.
VectorField face_average(const ScalarField& u);

// ---------------------------------------------------------------------------
// Integral functionals (midpoint quadrature).

enum class Functional {
    Integral,
    Mean,
    LpNorm,
    Osc,
    Fisher,
    Grad4,
    GradL1,
    GradL2Sq,
    LaplacianL2Sq,
};

/// `p` is only read for LpNorm; use infinity for the sup norm.
double field_functional(const ScalarField& u, Functional kind, double p = 2.0);

double integral(const ScalarField& u);
double mean(const ScalarField& u);
double lp_norm(const ScalarField& u, double p);
double osc(const ScalarField& u);
// \int |grad u|^2 / u with u averaged to faces. Requires u > 0.
double fisher(const ScalarField& u);
// \int |grad u|^4 with cell-averaged gradients.
double grad4(const ScalarField& u);
// \int |grad u| with cell-averaged gradients.
double grad_l1(const ScalarField& u);
// \int |grad u|^2 summed over faces; equals -<u, laplacian(u)> exactly.
double grad_l2sq(const ScalarField& u);
double laplacian_l2sq(const ScalarField& u);

// Face-based inner product sum_faces a.f * b.f * h^2 (the discrete \int a . b).
double face_inner(const VectorField& a, const VectorField& b);
// Cell-based inner product sum a * b * h^2.
double inner(const ScalarField& a, const ScalarField& b);

// ---------------------------------------------------------------------------
// Implicit linear solves.

/// Solves (1 + dt*lambda) u - dt*d*laplacian(u) = rhs under discrete Neumann
/// conditions by cosine-basis diagonalisation. Throws SolveFailure if the
/// relative residual exceeds 1e-10.
ScalarField helmholtz_solve(const ScalarField& rhs, double d, double lambda, double dt);

/// Relative sup-norm residual of a candidate Helmholtz solution.
double helmholtz_residual(const ScalarField& u, const ScalarField& rhs, double d, double lambda,
                          double dt);

/// Eigenvalue of -laplacian for the discrete cosine mode (j, k).
double laplacian_symbol(const GridSpec& grid, int j, int k);

// ---------------------------------------------------------------------------
// Neumann-compatible random test fields.

/// Coefficients a_jk of u = sum a_jk cos(j pi x / L) cos(k pi y / L), 0 <= j, k <= max_mode.
struct CosineCoefficients {
    double L = 1.0;
    int max_mode = 0;
    std::vector<double> a;  // (max_mode+1)^2 entries, a[k*(max_mode+1) + j]

    double operator()(int j, int k) const { return a[static_cast<std::size_t>(k) * (max_mode + 1) + j]; }
    double abs_sum() const;
};

struct CosineField {
    ScalarField field;
    CosineCoefficients coeffs;
};

CosineField sample_cosine_field(std::uint64_t seed, int max_mode, double amplitude,
                                const GridSpec& grid);

ScalarField synthesize(const CosineCoefficients& coeffs, const GridSpec& grid);

}  // namespace hotspot
