#include "hotspot/model.hpp"

#include <cmath>
#include <sstream>

namespace hotspot {

namespace {

void require_positive(double value, const char* name, const char* model) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        std::ostringstream msg;
        msg << model << ": parameter positivity hypothesis violated, " << name
            << " must be a finite constant > 0 (got " << value << ")";
        throw Error(ErrorCode::InvalidConfig, msg.str());
    }
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

void check_signs(const ScalarField& A, const ScalarField& N) {
    require_same_grid(A.grid(), N.grid());
    if (!(A.min() > 0.0)) throw Error(ErrorCode::NonPositiveA, "attractiveness must be > 0 everywhere");
    if (!(N.min() >= 0.0)) throw Error(ErrorCode::NegativeN, "criminal density must be >= 0 everywhere");
}

}  // namespace

void ModelParams::validate() const {
    require_positive(eta, "eta", "model");
    require_positive(psi, "psi", "model");
    require_positive(omega, "omega", "model");
    require_positive(atilde, "atilde", "model");
    require_positive(chi, "chi", "model");
}

void ShortParams::validate() const {
    require_positive(eta, "eta", "short model");
    require_positive(a0, "a0", "short model");
    require_positive(abar, "abar", "short model");
    require_positive(chi, "chi", "short model");
}

double attractiveness_diffusivity(const ModelKind& kind) {
    return std::visit([](const auto& m) { return m.eta; }, kind);
}

ReactionTerms reaction_terms_unchecked(const ModelKind& kind, const ScalarField& A, const ScalarField& N) {
    require_same_grid(A.grid(), N.grid());
    ScalarField rA(A.grid());
    ScalarField rN(A.grid());
    auto av = A.values();
    auto nv = N.values();
    auto ra = rA.values();
    auto rn = rN.values();
    const std::size_t size = av.size();

    return std::visit(
        overloaded{
            [&](const ModelParams& p) {
                for (std::size_t k = 0; k < size; ++k) {
                    ra[k] = p.psi * nv[k] * av[k] * (1.0 - av[k]) + p.atilde;
                    rn[k] = p.omega;
                }
                return ReactionTerms{std::move(rA), std::move(rN), 1.0, p.omega};
            },
            [&](const ShortParams& p) {
                for (std::size_t k = 0; k < size; ++k) {
                    ra[k] = nv[k] * av[k] + p.a0;
                    rn[k] = -nv[k] * av[k] + p.abar - p.a0;
                }
                return ReactionTerms{std::move(rA), std::move(rN), 1.0, 0.0};
            },
            [&](const GeneralModel& m) {
                for (std::size_t k = 0; k < size; ++k) {
                    ra[k] = m.f(av[k], nv[k]);
                    rn[k] = m.g(av[k], nv[k]);
                }
                return ReactionTerms{std::move(rA), std::move(rN), 1.0, m.omega};
            },
        },
        kind);
}

ReactionTerms reaction_terms(const ModelKind& kind, const ScalarField& A, const ScalarField& N) {
    check_signs(A, N);
    return reaction_terms_unchecked(kind, A, N);
}

namespace {

void require_floor(const ScalarField& A, double floor) {
    const double lo = A.min();
    if (!(lo >= floor)) {
        std::ostringstream msg;
        msg << "attractiveness " << lo << " fell below the sensitivity floor " << floor;
        throw Error(ErrorCode::FloorViolation, msg.str());
    }
}

}  // namespace

VectorField sensitivity_grad(const ScalarField& A, double chi, double floor) {
    require_floor(A, floor);
    VectorField v = gradient(A);
    if (chi == 0.0) return VectorField(A.grid());
    const int n = A.n();
    for (int j = 0; j < n; ++j) {
        for (int i = 1; i < n; ++i) v.fx(i, j) *= chi / (0.5 * (A(i - 1, j) + A(i, j)));
    }
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < n; ++i) v.fy(i, j) *= chi / (0.5 * (A(i, j - 1) + A(i, j)));
    }
    return v;
}

VectorField sensitivity_grad(const ModelKind& kind, const ScalarField& A, double floor) {
    if (const auto* p = std::get_if<ModelParams>(&kind)) return sensitivity_grad(A, p->chi, floor);
    if (const auto* s = std::get_if<ShortParams>(&kind)) return sensitivity_grad(A, s->chi, floor);

    const auto& m = std::get<GeneralModel>(kind);
    require_floor(A, floor);
    ScalarField hA(A.grid());
    for (std::size_t k = 0; k < A.values().size(); ++k) hA.values()[k] = m.h(A.values()[k]);
    return gradient(hA);
}

SteadyState steady_state(const ModelParams& params) {
    params.validate();
    const double psi = params.psi;
    const double at = params.atilde;
    const double b = psi - 1.0;
    const double disc = std::sqrt(b * b + 4.0 * psi * at);
    // Positive root of psi a^2 + (1 - psi) a - atilde; pick the form without cancellation.
    double a = b >= 0.0 ? (b + disc) / (2.0 * psi) : 2.0 * at / (disc - b);
    // One Newton polish step on the quadratic.
    const double q = psi * a * a - b * a - at;
    const double dq = 2.0 * psi * a - b;
    if (dq != 0.0) a -= q / dq;

    const double residual = psi * a * (1.0 - a) + at - a;
    const double scale = std::max({1.0, at, psi * a * a});
    if (!(std::abs(residual) <= 1e-12 * scale)) {
        throw Error(ErrorCode::SolveFailure, "steady state residual check failed");
    }
    return SteadyState{a, 1.0, residual};
}

DerivedBounds derived_bounds(const ScalarField& A0, const ScalarField& N0, const ModelParams& params) {
    require_same_grid(A0.grid(), N0.grid());
    const double a0_min = A0.min();
    const double a0_max = A0.max();
    if (!(a0_min > 0.0) || !A0.all_finite()) {
        throw Error(ErrorCode::InvalidInitialData, "initial attractiveness must be finite and > 0");
    }
    if (!(N0.min() >= 0.0) || !N0.all_finite()) {
        throw Error(ErrorCode::InvalidInitialData, "initial criminal density must be finite and >= 0");
    }
    DerivedBounds b;
    b.a_min = std::min({1.0, params.atilde, a0_min});
    b.a_max = std::max({1.0, params.atilde, a0_max});
    b.n1_max = std::max(lp_norm(N0, 1.0), A0.grid().area());
    return b;
}

}  // namespace hotspot
