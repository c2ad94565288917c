#include <cstdio>
#include <string>

#include "hotspot/analysis.hpp"

namespace hotspot {

namespace {

void append_number(std::string& row, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    row += buf;
}

void append_optional(std::string& row, const std::optional<double>& v) {
    if (v) append_number(row, *v);
}

const char* verdict(bool ok) { return ok ? "ok" : "fail"; }

}  // namespace

std::string diagnostics_csv_header() {
    return "t,mass_N,minA,maxA,minN,grad_A_l2sq,phi,y_entropy,mass_residual,r1,r2,r3,r4,flags";
}

std::string to_csv_row(const DiagnosticsRecord& rec) {
    std::string row;
    for (double v : {rec.t, rec.mass_N, rec.minA, rec.maxA, rec.minN, rec.grad_A_l2sq}) {
        append_number(row, v);
        row += ',';
    }
    append_optional(row, rec.phi);
    row += ',';
    append_optional(row, rec.y_entropy);
    row += ',';
    append_optional(row, rec.mass_residual);
    row += ',';
    for (int i = 0; i < 4; ++i) {
        if (rec.energy) append_number(row, rec.energy->r[i]);
        row += ',';
    }
    if (rec.bound_flags) {
        row += "amin=";
        row += verdict(rec.bound_flags->a_min.ok);
        row += ";amax=";
        row += verdict(rec.bound_flags->a_max.ok);
        row += ";npos=";
        row += verdict(rec.bound_flags->n_lower.ok);
    } else {
        row += "amin=-;amax=-;npos=-";
    }
    row += ";id3=";
    row += rec.energy ? verdict(rec.energy->id3_sign_ok) : "-";
    return row;
}

}  // namespace hotspot
