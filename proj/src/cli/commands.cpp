#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <future>
#include <iomanip>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "hotspot/analysis.hpp"
#include "hotspot/cli.hpp"

namespace hotspot::cli {

namespace {

constexpr double kProbeSlack = 1e-10;

std::string fixed(double v, int digits) {
    std::ostringstream s;
    s << std::setprecision(digits) << std::fixed << v;
    return s.str();
}

std::string full(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string shortest(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
    std::vector<std::string> configs;
    int jobs = 1;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
    std::vector<RunConfigFile> configs;
    const char* env_out = std::getenv("HOTSPOT_OUT");
    std::set<std::filesystem::path> dirs;
    for (const auto& path : a.configs) {
        try {
            RunConfigFile cfg = load_run_config(path);
            if (env_out != nullptr && *env_out != '\0') {
                cfg.outputs.dir = a.configs.size() == 1 ? std::filesystem::path(env_out)
                                                        : std::filesystem::path(env_out) / std::filesystem::path(path).stem();
            }
            if (!dirs.insert(std::filesystem::weakly_canonical(cfg.outputs.dir)).second) {
                err << "error: two configs write to the same output directory " << cfg.outputs.dir << '\n';
                return kExitFailure;
            }
            configs.push_back(std::move(cfg));
        } catch (const Error& e) {
            err << "error: " << path << ": " << e.what() << '\n';
            return kExitFailure;
        }
    }

    std::vector<int> codes(configs.size(), kExitOk);
    std::vector<std::ostringstream> logs(configs.size());
    if (a.jobs <= 1 || configs.size() == 1) {
        for (std::size_t k = 0; k < configs.size(); ++k) codes[k] = simulate(configs[k], logs[k]);
    } else {
        std::size_t next = 0;
        while (next < configs.size()) {
            std::vector<std::future<int>> batch;
            const std::size_t start = next;
            for (; next < configs.size() && next - start < static_cast<std::size_t>(a.jobs); ++next) {
                batch.push_back(std::async(std::launch::async, [&, next] { return simulate(configs[next], logs[next]); }));
            }
            for (std::size_t k = 0; k < batch.size(); ++k) codes[start + k] = batch[k].get();
        }
    }

    int worst = kExitOk;
    for (std::size_t k = 0; k < configs.size(); ++k) {
        err << logs[k].str();
        out << a.configs[k] << ": exit " << codes[k] << " -> " << configs[k].outputs.dir.string() << '\n';
        // Failure dominates blowup, which dominates success.
        if (codes[k] == kExitFailure || (codes[k] == kExitBlowup && worst == kExitOk)) worst = codes[k];
    }
    return worst;
}

// ---------------------------------------------------------------------------

struct CheckArgs {
    double eta = 0.0, psi = 0.0, chi = 0.0, atilde = 0.0;
    double amin = 0.0, amax = 0.0;
    std::optional<double> n1max;
    double L = 1.0;
    std::optional<double> mu, K;
};

int cmd_check(const CheckArgs& a, std::ostream& out, std::ostream& err) {
    if (a.amin > a.amax) {
        err << "error: --amin must not exceed --amax\n";
        return kExitFailure;
    }
    if (a.mu.has_value() != a.K.has_value()) {
        err << "error: --mu and --K must be given together\n";
        return kExitFailure;
    }
    try {
        ModelParams p;
        p.eta = a.eta;
        p.psi = a.psi;
        p.chi = a.chi;
        p.atilde = a.atilde;
        const GridSpec domain(a.L, 8);
        // By definition n1_max = max{||N0||_1, |Omega|}.
        const DerivedBounds b{a.amin, a.amax, std::max(a.n1max.value_or(domain.area()), domain.area())};
        std::optional<MuK> mu_k;
        if (a.mu) mu_k = MuK{*a.mu, *a.K};
        const ExistenceReport r = check_global_condition(p, b, domain, mu_k);
        out << to_json(r) << '\n';
        return r.any_route_holds() ? kExitOk : kExitNegative;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

// ---------------------------------------------------------------------------

struct TableArgs {
    double psi = 0.0;
    double area = 1.0;
    double chi = 2.0;
    std::vector<double> etas;
};

int cmd_table(const TableArgs& a, std::ostream& out, std::ostream& err) {
    try {
        const double gamma = critical_constants(1.0, a.psi, a.area, a.chi).gamma;
        out << "# gamma = " << fixed(gamma, 6) << '\n';
        out << "eta,atilde_minus\n";
        for (double eta : a.etas) {
            const CriticalConstants c = critical_constants(eta, a.psi, a.area, a.chi);
            out << shortest(eta) << ',' << fixed(c.atilde_minus, 6) << '\n';
        }
        return kExitOk;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
    int n = 64;
    int samples = 100;
    std::uint64_t seed = 7;
    int max_mode = 6;
    double amplitude = 1.0;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
    try {
        const GridSpec grid(1.0, a.n);
        double worst_l1 = 0.0, worst_K = 0.0, worst_gap = 0.0;
        double min_slack = std::numeric_limits<double>::infinity();
        int evaluated = 0, skipped = 0;
        for (int s = 0; s < a.samples; ++s) {
            const CosineField cf = sample_cosine_field(a.seed + static_cast<std::uint64_t>(s), a.max_mode, a.amplitude, grid);
            try {
                const PoincareProbe pp = poincare_probe(cf.field);
                const InterpolationProbe ip = interpolation_probe(cf.field, &cf.coeffs);
                // Shift by the coefficient l1 norm so the field is strictly positive.
                ScalarField positive = cf.field;
                positive += 1.0 + cf.coeffs.abs_sum();
                worst_l1 = std::max(worst_l1, pp.ratio_l1);
                worst_K = std::max(worst_K, ip.ratio_K);
                worst_gap = std::max(worst_gap, ip.fourier_gap.value_or(0.0));
                min_slack = std::min(min_slack, sobolev_slack(positive));
                ++evaluated;
            } catch (const Error& e) {
                if (e.code() != ErrorCode::ConstantField && e.code() != ErrorCode::DegenerateField) throw;
                out << "notice: sample " << s << " is constant or harmonic, skipped\n";
                ++skipped;
            }
        }
        const double mu_bound = std::sqrt(kSquareMuSq);
        const bool ok_l1 = worst_l1 <= mu_bound + kProbeSlack;
        const bool ok_K = worst_K <= kSquareK + kProbeSlack;
        const bool ok_gap = worst_gap <= kProbeSlack;
        const bool ok_slack = evaluated == 0 || min_slack >= -kProbeSlack;
        out << "samples_evaluated=" << evaluated << '\n';
        out << "samples_skipped=" << skipped << '\n';
        out << "worst_ratio_l1=" << full(worst_l1) << " bound=" << full(mu_bound) << (ok_l1 ? " ok" : " EXCEEDED") << '\n';
        out << "worst_ratio_K=" << full(worst_K) << " bound=" << full(kSquareK) << (ok_K ? " ok" : " EXCEEDED") << '\n';
        out << "max_fourier_gap=" << full(worst_gap) << (ok_gap ? " ok" : " EXCEEDED") << '\n';
        if (evaluated > 0) {
            out << "min_sobolev_slack=" << full(min_slack) << (ok_slack ? " ok" : " EXCEEDED") << '\n';
        }
        out << (ok_l1 && ok_K && ok_gap && ok_slack ? "no counterexample found at sampled fields"
                                                    : "bound exceeded on a sampled field")
            << '\n';
        return ok_l1 && ok_K && ok_gap && ok_slack ? kExitOk : kExitNegative;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

// ---------------------------------------------------------------------------

int cmd_steady(double psi, double atilde, std::ostream& out, std::ostream& err) {
    try {
        ModelParams p;
        p.psi = psi;
        p.atilde = atilde;
        const SteadyState s = steady_state(p);
        out << "a_star=" << full(s.a_star) << '\n';
        out << "n_star=" << full(s.n_star) << '\n';
        out << "residual=" << full(s.residual) << '\n';
        return kExitOk;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Crime-hotspot PDE simulator and analysis toolkit", "hotspot"};
    app.require_subcommand(1);

    SimulateArgs sim_args;
    auto* sim = app.add_subcommand("simulate", "Run simulations from JSON config files");
    sim->add_option("config", sim_args.configs, "Config file(s)")->required()->check(CLI::ExistingFile);
    sim->add_option("--jobs", sim_args.jobs, "Concurrent simulations when several configs are given")
        ->check(CLI::PositiveNumber);

    CheckArgs check_args;
    auto* check = app.add_subcommand("check", "Evaluate the global-existence conditions");
    check->add_option("--eta", check_args.eta)->required()->check(CLI::PositiveNumber);
    check->add_option("--psi", check_args.psi)->required()->check(CLI::PositiveNumber);
    check->add_option("--chi", check_args.chi)->required()->check(CLI::PositiveNumber);
    check->add_option("--atilde", check_args.atilde)->required()->check(CLI::PositiveNumber);
    check->add_option("--amin", check_args.amin, "min{1, atilde, min A0}")->required()->check(CLI::PositiveNumber);
    check->add_option("--amax", check_args.amax, "max{1, atilde, max A0}")->required()->check(CLI::PositiveNumber);
    check->add_option("--n1max", check_args.n1max, "max{||N0||_1, |Omega|} (default |Omega|)")
        ->check(CLI::PositiveNumber);
    check->add_option("--L", check_args.L, "Side length of the square domain")->check(CLI::PositiveNumber);
    check->add_option("--mu", check_args.mu, "Poincare-Sobolev constant")->check(CLI::PositiveNumber);
    check->add_option("--K", check_args.K, "Interpolation constant")->check(CLI::PositiveNumber);

    TableArgs table_args;
    auto* table = app.add_subcommand("table", "Critical static attractiveness as a function of eta");
    table->add_option("--psi", table_args.psi)->required()->check(CLI::PositiveNumber);
    table->add_option("--area", table_args.area)->check(CLI::PositiveNumber);
    table->add_option("--chi", table_args.chi)->check(CLI::PositiveNumber);
    table->add_option("--eta-list", table_args.etas, "Comma-separated eta values")
        ->required()
        ->delimiter(',')
        ->check(CLI::PositiveNumber);

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify", "Probe the functional inequalities on random cosine fields");
    verify->add_option("--n", verify_args.n, "Cells per side (>= 32)")->check(CLI::Range(32, 1 << 14));
    verify->add_option("--samples", verify_args.samples)->check(CLI::Range(1, 1 << 20));
    verify->add_option("--seed", verify_args.seed);
    verify->add_option("--max-mode", verify_args.max_mode)->check(CLI::NonNegativeNumber);
    verify->add_option("--amplitude", verify_args.amplitude)->check(CLI::PositiveNumber);

    double steady_psi = 0.0, steady_atilde = 0.0;
    auto* steady = app.add_subcommand("steady", "Homogeneous steady state");
    steady->add_option("--psi", steady_psi)->required()->check(CLI::PositiveNumber);
    steady->add_option("--atilde", steady_atilde)->required()->check(CLI::PositiveNumber);

    std::vector<std::string> argv_store{"hotspot"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitFailure;
    }

    if (sim->parsed()) return cmd_simulate(sim_args, out, err);
    if (check->parsed()) return cmd_check(check_args, out, err);
    if (table->parsed()) return cmd_table(table_args, out, err);
    if (verify->parsed()) return cmd_verify(verify_args, out, err);
    if (steady->parsed()) return cmd_steady(steady_psi, steady_atilde, out, err);
    return kExitFailure;
}

}  // namespace hotspot::cli
