#include "hotspot/field_io.hpp"

#include <cmath>
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace hotspot {

namespace {

constexpr std::string_view kMagic = "hotspotfield";

std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<double> parse_row(const std::string& line, int line_no) {
    std::string cleaned = line;
    for (char& c : cleaned) {
        if (c == ',' || c == ';' || c == '\t' || c == '\r') c = ' ';
    }
    std::vector<double> row;
    std::size_t pos = 0;
    while (pos < cleaned.size()) {
        while (pos < cleaned.size() && cleaned[pos] == ' ') ++pos;
        if (pos >= cleaned.size()) break;
        std::size_t used = 0;
        try {
            row.push_back(std::stod(cleaned.substr(pos), &used));
        } catch (const std::exception&) {
            throw Error(ErrorCode::Io, "unparseable value on line " + std::to_string(line_no));
        }
        pos += used;
    }
    return row;
}

std::pair<double, int> parse_header(const std::string& line) {
    std::istringstream in(line);
    std::string magic, version, l_tok, n_tok;
    in >> magic >> version >> l_tok >> n_tok;
    if (magic != kMagic || version != "v1" || l_tok.rfind("L=", 0) != 0 || n_tok.rfind("n=", 0) != 0) {
        throw Error(ErrorCode::Io, "malformed field header: " + line);
    }
    try {
        return {std::stod(l_tok.substr(2)), std::stoi(n_tok.substr(2))};
    } catch (const std::exception&) {
        throw Error(ErrorCode::Io, "malformed field header: " + line);
    }
}

}  // namespace

void write_field(std::ostream& out, const ScalarField& u) {
    const GridSpec& g = u.grid();
    out << kMagic << " v1 L=" << format_value(g.L()) << " n=" << g.n() << '\n';
    for (int j = 0; j < g.n(); ++j) {
        for (int i = 0; i < g.n(); ++i) {
            if (i > 0) out << ' ';
            out << format_value(u(i, j));
        }
        out << '\n';
    }
}

void write_field(const std::filesystem::path& path, const ScalarField& u) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
    write_field(out, u);
    if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

ScalarField read_field(std::istream& in, const std::optional<GridSpec>& expected) {
    std::string line;
    std::optional<GridSpec> header_grid;
    std::vector<std::vector<double>> rows;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (rows.empty() && !header_grid && line.rfind(kMagic, 0) == 0) {
            const auto [L, n] = parse_header(line);
            header_grid = GridSpec(L, n);
            continue;
        }
        rows.push_back(parse_row(line, line_no));
    }

    if (header_grid && expected && !(*header_grid == *expected)) {
        require_same_grid(*header_grid, *expected);
    }
    std::optional<GridSpec> grid = header_grid ? header_grid : expected;
    if (!grid) {
        throw Error(ErrorCode::Io, "headerless field file needs an explicit grid");
    }
    const int n = grid->n();
    if (static_cast<int>(rows.size()) != n) {
        throw Error(ErrorCode::GridMismatch,
                    "expected " + std::to_string(n) + " rows, found " + std::to_string(rows.size()));
    }
    std::vector<double> values;
    values.reserve(grid->cells());
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != n) {
            throw Error(ErrorCode::GridMismatch, "expected " + std::to_string(n) + " values per row, found " +
                                                     std::to_string(row.size()));
        }
        values.insert(values.end(), row.begin(), row.end());
    }
    ScalarField u(*grid, std::move(values));
    u.require_finite("field file");
    return u;
}

ScalarField read_field(const std::filesystem::path& path, const std::optional<GridSpec>& expected) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
    return read_field(in, expected);
}

PgmMap write_pgm(const std::filesystem::path& path, const ScalarField& u) {
    const int n = u.n();
    PgmMap map{u.min(), u.max()};
    const double span = map.max - map.min;
    std::string pixels(static_cast<std::size_t>(n) * n, '\0');
    std::size_t k = 0;
    for (int j = n - 1; j >= 0; --j) {
        for (int i = 0; i < n; ++i) {
            double level = span > 0.0 ? 255.0 * (u(i, j) - map.min) / span : 0.0;
            level = std::clamp(std::round(level), 0.0, 255.0);
            pixels[k++] = static_cast<char>(static_cast<unsigned char>(level));
        }
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
    out << "P5\n" << n << ' ' << n << "\n255\n";
    out.write(pixels.data(), static_cast<std::streamsize>(pixels.size()));
    if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
    return map;
}

}  // namespace hotspot
