#include <cmath>

#include "hotspot/analysis.hpp"

namespace hotspot {

namespace {

double boltzmann(const ScalarField& N) {
    double sum = 0.0;
    for (double n : N.values()) sum += n * std::log(n) - n + 1.0;
    return sum * N.grid().h() * N.grid().h();
}

void require_positive_n(const ScalarField& N) {
    if (!(N.min() > 0.0)) {
        throw Error(ErrorCode::NonPositiveN, "energy identities need N > 0 in the whole window");
    }
}

}  // namespace

EnergyResiduals energy_residuals(const EnergyWindow& w, const ModelParams& p, double a_floor) {
    const double d_prev = w.t_mid - w.t_prev;
    const double d_next = w.t_next - w.t_mid;
    if (!(d_prev > 0.0) || std::abs(d_next - d_prev) > 1e-9 * d_prev) {
        throw Error(ErrorCode::InvalidArgument, "energy window must be uniformly spaced and increasing");
    }
    const double two_d = w.t_next - w.t_prev;
    const ScalarField& A = *w.A_mid;
    const ScalarField& N = *w.N_mid;
    require_positive_n(*w.N_prev);
    require_positive_n(N);
    require_positive_n(*w.N_next);

    const auto av = A.values();
    const auto nv = N.values();
    const double h2 = A.grid().h() * A.grid().h();

    const ScalarField lapA = laplacian(A);
    const double gradA_sq = grad_l2sq(A);
    const VectorField gradN = gradient(N);
    const VectorField theta = sensitivity_grad(A, p.chi, a_floor);

    double source1 = 0.0;  // \int N A^2 (1 - A)
    double source2 = 0.0;  // \int N A (1 - A) Lap A
    double log_defect = 0.0;  // \int (log N - N + 1)
    for (std::size_t k = 0; k < av.size(); ++k) {
        const double logistic = nv[k] * av[k] * (1.0 - av[k]);
        source1 += logistic * av[k];
        source2 += logistic * lapA.values()[k];
        log_defect += std::log(nv[k]) - nv[k] + 1.0;
    }
    source1 *= h2;
    source2 *= h2;
    log_defect *= h2;

    EnergyResiduals out;
    {
        const double lhs = (lp_norm(*w.A_next, 2.0) * lp_norm(*w.A_next, 2.0) -
                            lp_norm(*w.A_prev, 2.0) * lp_norm(*w.A_prev, 2.0)) / (2.0 * two_d) +
                           inner(A, A) + p.eta * gradA_sq;
        const double rhs = p.psi * source1 + p.atilde * integral(A);
        out.r[0] = std::abs(lhs - rhs);
    }
    {
        const double lhs = (grad_l2sq(*w.A_next) - grad_l2sq(*w.A_prev)) / (2.0 * two_d) + gradA_sq +
                           p.eta * inner(lapA, lapA);
        const double rhs = -p.psi * source2;
        out.r[1] = std::abs(lhs - rhs);
    }
    {
        const double E = boltzmann(N);
        const double lhs = (boltzmann(*w.N_next) - boltzmann(*w.N_prev)) / two_d + p.omega * E + fisher(N) -
                           face_inner(gradN, theta);
        out.id3_rhs = p.omega * log_defect;
        out.r[2] = std::abs(lhs - out.id3_rhs);
        out.id3_sign_ok = out.id3_rhs <= 0.0;
    }
    {
        const VectorField n_grad_n = face_product(face_average(N), gradN);
        const double lhs = (inner(*w.N_next, *w.N_next) - inner(*w.N_prev, *w.N_prev)) / (2.0 * two_d) +
                           p.omega * inner(N, N) + grad_l2sq(N);
        const double rhs = face_inner(n_grad_n, theta) + p.omega * integral(N);
        out.r[3] = std::abs(lhs - rhs);
    }
    return out;
}

}  // namespace hotspot
