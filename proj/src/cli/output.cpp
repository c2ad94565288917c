#include <cstdio>
#include <fstream>
#include <ostream>

#include "hotspot/cli.hpp"
#include "hotspot/field_io.hpp"
#include "json.hpp"

namespace hotspot::cli {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
    out << text << '\n';
}

void write_heatmap(const std::filesystem::path& dir, const std::string& stem, const ScalarField& u) {
    const PgmMap map = write_pgm(dir / (stem + ".pgm"), u);
    nlohmann::ordered_json side;
    side["min"] = map.min;
    side["max"] = map.max;
    side["levels"] = 255;
    side["mapping"] = "linear";
    side["top_row"] = "y_max";
    write_text(dir / (stem + ".json"), side.dump(2));
}

}  // namespace

std::string snapshot_stem(char field, double t) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%c_%.6f", field, t);
    return buf;
}

void write_outcome(const std::filesystem::path& path, const RunResult& result) {
    nlohmann::ordered_json j;
    j["outcome"] = std::string(outcome_name(result.outcome));
    j["t_final"] = result.final_state ? result.final_state->t : 0.0;
    std::visit(overloaded{[](const Completed&) {}, [&](const BlowupSuspected& b) { j["t_blowup_suspected"] = b.t; },
                          [&](const Failed& f) { j["reason"] = f.reason; }},
               result.outcome);
    j["steps"] = result.steps;
    j["rejected_steps"] = result.rejected_steps;
    j["max_step_mass_residual"] = result.max_step_mass_residual;
    j["bounds"] = {{"a_min", result.bounds.a_min}, {"a_max", result.bounds.a_max}, {"n1_max", result.bounds.n1_max}};
    double max_n_l2 = 0.0;
    for (const auto& rec : result.trajectory) max_n_l2 = std::max(max_n_l2, rec.n_l2);
    j["max_N_l2"] = max_n_l2;
    write_text(path, j.dump(2));
}

int simulate(const RunConfigFile& config, std::ostream& err) {
    const std::filesystem::path& dir = config.outputs.dir;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        err << "error: cannot create output directory " << dir << ": " << ec.message() << '\n';
        return kExitFailure;
    }

    std::ofstream csv;
    if (config.outputs.diagnostics) {
        csv.open(dir / "diagnostics.csv", std::ios::trunc);
        if (!csv) {
            err << "error: cannot write " << (dir / "diagnostics.csv") << '\n';
            return kExitFailure;
        }
        csv << diagnostics_csv_header() << '\n' << std::flush;
    }

    RunObserver observer;
    if (config.outputs.snapshots) {
        observer.on_snapshot = [&dir](const SimState& s) {
            for (const auto& [name, field] : {std::pair{'A', &s.A}, std::pair{'N', &s.N}}) {
                const std::string stem = snapshot_stem(name, s.t);
                write_field(dir / (stem + ".field"), *field);
                write_heatmap(dir, stem, *field);
            }
        };
    }
    if (config.outputs.diagnostics) {
        observer.on_record = [&csv](const DiagnosticsRecord& rec) {
            const std::string row = to_csv_row(rec) + '\n';
            csv.write(row.data(), static_cast<std::streamsize>(row.size()));
            csv.flush();
        };
    }

    RunResult result;
    try {
        result = run(config.sim, observer);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        result.outcome = Failed{e.what()};
        write_outcome(dir / "outcome.json", result);
        return kExitFailure;
    }
    write_outcome(dir / "outcome.json", result);

    return std::visit(overloaded{[](const Completed&) { return kExitOk; },
                                 [&](const BlowupSuspected& b) {
                                     err << "blowup suspected at t=" << b.t << '\n';
                                     return kExitBlowup;
                                 },
                                 [&](const Failed& f) {
                                     err << "run failed: " << f.reason << '\n';
                                     return kExitFailure;
                                 }},
                      result.outcome);
}

}  // namespace hotspot::cli
