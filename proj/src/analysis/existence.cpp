#include <cmath>

#include "hotspot/analysis.hpp"
#include "json.hpp"

namespace hotspot {

double epsilon0(double mu_sq, double K) {
    if (!(mu_sq > 0.0) || !(K > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "mu and K must be positive");
    }
    return 1.0 / (mu_sq * std::sqrt(K));
}

double square_epsilon0() { return 1.0 / (3.0 * std::sqrt(3.0)); }

std::string_view to_string(EpsilonSource s) noexcept {
    return s == EpsilonSource::SquareClosedForm ? "square_closed_form" : "user_supplied";
}

std::string_view to_string(ExistenceRoute r) noexcept {
    switch (r) {
        case ExistenceRoute::SizeCondition: return "size_condition";
        case ExistenceRoute::WeakSensitivity: return "weak_sensitivity";
        case ExistenceRoute::None: return "none";
    }
    return "none";
}

ExistenceReport check_global_condition(const ModelParams& params, const DerivedBounds& bounds,
                                       const GridSpec& domain, const std::optional<MuK>& mu_k) {
    if (!(bounds.a_min > 0.0) || !(bounds.a_max >= bounds.a_min) || !(bounds.n1_max > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "bounds must satisfy 0 < a_min <= a_max and n1_max > 0");
    }
    params.validate();

    ExistenceReport r;
    r.eta = params.eta;
    r.psi = params.psi;
    r.chi = params.chi;
    r.atilde = params.atilde;
    r.bounds = bounds;
    r.area = domain.area();
    if (mu_k) {
        r.epsilon0 = epsilon0(mu_k->mu * mu_k->mu, mu_k->K);
        r.epsilon0_source = EpsilonSource::UserSupplied;
        r.mu_k = mu_k;
    } else {
        r.epsilon0 = square_epsilon0();
        r.epsilon0_source = EpsilonSource::SquareClosedForm;
    }

    const double ratio = bounds.a_max / bounds.a_min;
    r.lhs = ratio * ratio * (bounds.a_max - bounds.a_min) * bounds.n1_max;
    r.rhs = r.epsilon0 * params.eta / (params.psi * params.chi * params.chi);
    r.holds = r.lhs < r.rhs;
    r.margin = r.rhs - r.lhs;
    r.weak_sensitivity_holds = params.chi <= 1.0 && params.atilde <= 1.0 && bounds.a_max <= 1.0;
    r.route = r.holds ? ExistenceRoute::SizeCondition
                      : (r.weak_sensitivity_holds ? ExistenceRoute::WeakSensitivity : ExistenceRoute::None);
    return r;
}

std::string to_json(const ExistenceReport& r) {
    nlohmann::ordered_json j;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["epsilon0"] = r.epsilon0;
    j["epsilon0_source"] = std::string(to_string(r.epsilon0_source));
    j["holds"] = r.holds;
    j["margin"] = r.margin;
    j["route"] = std::string(to_string(r.route));
    j["routes"] = {{"size_condition", r.holds}, {"weak_sensitivity", r.weak_sensitivity_holds}};
    nlohmann::ordered_json in;
    in["eta"] = r.eta;
    in["psi"] = r.psi;
    in["chi"] = r.chi;
    in["atilde"] = r.atilde;
    in["a_min"] = r.bounds.a_min;
    in["a_max"] = r.bounds.a_max;
    in["n1_max"] = r.bounds.n1_max;
    in["area"] = r.area;
    if (r.mu_k) {
        in["mu"] = r.mu_k->mu;
        in["K"] = r.mu_k->K;
    }
    j["inputs"] = in;
    return j.dump(2);
}

CriticalConstants critical_constants(double eta, double psi, double area, double chi) {
    if (!(eta > 0.0) || !(psi > 0.0) || !(area > 0.0) || !(chi > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "critical constants need positive eta, psi, area, chi");
    }
    const double gamma = square_epsilon0() / (chi * chi * psi * area);
    const double atilde_minus = 2.0 / (1.0 + std::sqrt(1.0 + 4.0 * gamma * eta));
    return {gamma, atilde_minus};
}

}  // namespace hotspot
