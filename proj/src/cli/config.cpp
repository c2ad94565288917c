#include "hotspot/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace hotspot {

namespace {

using nlohmann::json;

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); }

const json* section(const json& root, const char* name, std::initializer_list<const char*> allowed) {
    if (!root.contains(name)) return nullptr;
    const json& s = root.at(name);
    if (!s.is_object()) invalid(std::string("section '") + name + "' must be an object");
    const std::set<std::string> keys(allowed.begin(), allowed.end());
    for (const auto& [key, value] : s.items()) {
        if (!keys.count(key)) invalid(std::string("unknown key '") + name + "." + key + "'");
    }
    return &s;
}

double number(const json& s, const char* key, double fallback) {
    if (!s.contains(key)) return fallback;
    const json& v = s.at(key);
    if (!v.is_number()) invalid(std::string("'") + key + "' must be a number");
    return v.get<double>();
}

int integer(const json& s, const char* key, int fallback) {
    if (!s.contains(key)) return fallback;
    const json& v = s.at(key);
    if (!v.is_number_integer()) invalid(std::string("'") + key + "' must be an integer");
    return v.get<int>();
}

bool boolean(const json& s, const char* key, bool fallback) {
    if (!s.contains(key)) return fallback;
    const json& v = s.at(key);
    if (!v.is_boolean()) invalid(std::string("'") + key + "' must be true or false");
    return v.get<bool>();
}

std::string text(const json& s, const char* key, const std::string& fallback) {
    if (!s.contains(key)) return fallback;
    const json& v = s.at(key);
    if (!v.is_string()) invalid(std::string("'") + key + "' must be a string");
    return v.get<std::string>();
}

ModelKind parse_model(const json* s) {
    if (s == nullptr) return ModelParams{};
    const std::string kind = text(*s, "kind", "main");
    if (kind == "main") {
        for (const char* k : {"a0", "abar"}) {
            if (s->contains(k)) invalid(std::string("'model.") + k + "' belongs to the short model");
        }
        ModelParams p;
        p.eta = number(*s, "eta", p.eta);
        p.psi = number(*s, "psi", p.psi);
        p.omega = number(*s, "omega", p.omega);
        p.atilde = number(*s, "atilde", p.atilde);
        p.chi = number(*s, "chi", p.chi);
        p.validate();
        return p;
    }
    if (kind == "short") {
        for (const char* k : {"psi", "omega", "atilde"}) {
            if (s->contains(k)) invalid(std::string("'model.") + k + "' is not a short-model parameter");
        }
        ShortParams p;
        p.eta = number(*s, "eta", p.eta);
        p.a0 = number(*s, "a0", p.a0);
        p.abar = number(*s, "abar", p.abar);
        p.chi = number(*s, "chi", p.chi);
        p.validate();
        return p;
    }
    invalid("model.kind must be \"main\" or \"short\", got \"" + kind + "\"");
}

InitialCondition parse_ic(const json& root, const std::filesystem::path& base_dir) {
    if (!root.contains("ic")) return ic::PerturbedSteady{};
    const json& s = root.at("ic");
    if (!s.is_object()) invalid("section 'ic' must be an object");
    const std::string recipe = text(s, "recipe", "perturbed_steady");
    if (recipe == "constants") {
        section(root, "ic", {"recipe", "a0", "n0"});
        ic::Constants c;
        c.a0 = number(s, "a0", c.a0);
        c.n0 = number(s, "n0", c.n0);
        return c;
    }
    if (recipe == "perturbed_steady") {
        section(root, "ic", {"recipe", "amplitude", "mode_j", "mode_k", "n_amplitude"});
        ic::PerturbedSteady p;
        p.amplitude = number(s, "amplitude", p.amplitude);
        p.mode_j = integer(s, "mode_j", p.mode_j);
        p.mode_k = integer(s, "mode_k", p.mode_k);
        p.n_amplitude = number(s, "n_amplitude", p.n_amplitude);
        return p;
    }
    if (recipe == "file") {
        section(root, "ic", {"recipe", "path_A", "path_N"});
        if (!s.contains("path_A") || !s.contains("path_N")) invalid("ic recipe 'file' needs path_A and path_N");
        auto resolve = [&](const char* key) {
            std::filesystem::path p = text(s, key, "");
            return p.is_relative() ? base_dir / p : p;
        };
        return ic::FromFiles{resolve("path_A"), resolve("path_N")};
    }
    invalid("unknown ic recipe '" + recipe + "'");
}

}  // namespace

RunConfigFile parse_run_config(std::string_view json_text, const std::filesystem::path& base_dir) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        invalid(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) invalid("config must be a JSON object");
    const std::set<std::string> sections{"model", "grid", "time", "ic", "numerics", "outputs"};
    for (const auto& [key, value] : root.items()) {
        if (!sections.count(key)) invalid("unknown top-level key '" + key + "'");
    }

    RunConfigFile cfg;
    SimConfig& sim = cfg.sim;
    sim.model = parse_model(section(root, "model", {"kind", "eta", "psi", "omega", "atilde", "chi", "a0", "abar"}));

    if (const json* g = section(root, "grid", {"L", "n"})) {
        try {
            sim.grid = GridSpec(number(*g, "L", sim.grid.L()), integer(*g, "n", sim.grid.n()));
        } catch (const Error& e) {
            invalid(std::string("grid: ") + e.what());
        }
    }
    if (const json* t = section(root, "time", {"t_end", "dt_init", "dt_min", "output_every"})) {
        sim.t_end = number(*t, "t_end", sim.t_end);
        sim.dt_init = number(*t, "dt_init", sim.dt_init);
        sim.dt_min = number(*t, "dt_min", sim.dt_min);
        sim.output_every = number(*t, "output_every", sim.output_every);
    }
    sim.ic = parse_ic(root, base_dir);
    if (const json* nm = section(root, "numerics",
                                 {"flux_scheme", "cfl", "guard_tol", "dt_max", "a_floor", "energy_residuals"})) {
        const std::string scheme = text(*nm, "flux_scheme", "centered");
        if (scheme == "centered") {
            sim.flux_scheme = FluxScheme::Centered;
        } else if (scheme == "upwind") {
            sim.flux_scheme = FluxScheme::Upwind;
        } else {
            invalid("numerics.flux_scheme must be \"centered\" or \"upwind\"");
        }
        sim.cfl_advection = number(*nm, "cfl", sim.cfl_advection);
        sim.guard_tol = number(*nm, "guard_tol", sim.guard_tol);
        if (nm->contains("dt_max")) sim.dt_max = number(*nm, "dt_max", 0.0);
        if (nm->contains("a_floor")) sim.a_floor = number(*nm, "a_floor", 0.0);
        sim.energy_residuals = boolean(*nm, "energy_residuals", sim.energy_residuals);
    }
    if (const json* o = section(root, "outputs", {"dir", "snapshots", "diagnostics"})) {
        cfg.outputs.dir = text(*o, "dir", cfg.outputs.dir.string());
        cfg.outputs.snapshots = boolean(*o, "snapshots", cfg.outputs.snapshots);
        cfg.outputs.diagnostics = boolean(*o, "diagnostics", cfg.outputs.diagnostics);
    }
    // The CLI streams snapshots to disk; nothing needs to be retained in memory.
    sim.keep_snapshots = false;
    sim.validate();
    return cfg;
}

RunConfigFile load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) invalid("cannot read config " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_run_config(buf.str(), path.parent_path());
}

}  // namespace hotspot
