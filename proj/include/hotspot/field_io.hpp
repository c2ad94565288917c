#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "hotspot/grid.hpp"

namespace hotspot {

// Snapshot text format:
//
//   hotspotfield v1 L=<L> n=<n>
//   <n lines of n space-separated values, row j holds y-index j, x increasing>
//
// Readers also accept a headerless n x n CSV (comma and/or whitespace
// separated); the grid must then be supplied by the caller.

void write_field(std::ostream& out, const ScalarField& u);
void write_field(const std::filesystem::path& path, const ScalarField& u);

/// Parses either format. With `expected`, the header (if any) and the value
/// count are checked against it (GridMismatch on disagreement).
ScalarField read_field(std::istream& in, const std::optional<GridSpec>& expected = std::nullopt);
ScalarField read_field(const std::filesystem::path& path,
                       const std::optional<GridSpec>& expected = std::nullopt);

/// 8-bit binary PGM (P5), linear map of [min, max] onto [0, 255]; the top
/// image row is the largest y. A constant field maps to 0.
struct PgmMap {
    double min = 0.0;
    double max = 0.0;
};
PgmMap write_pgm(const std::filesystem::path& path, const ScalarField& u);

}  // namespace hotspot
