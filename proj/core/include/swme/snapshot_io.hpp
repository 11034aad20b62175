#pragma once

// CSV snapshots of dimensionless solver fields.
//   1D: x,h,um,alpha1..alphaN
//   2D: x,y,h,um,vm,alpha1,beta1,...,alphaN,betaN   (x fastest)
// Velocities and moments are primitive (not multiplied by h); every value is
// written with %.12e.

#include <filesystem>
#include <iosfwd>
#include <string>

#include "swme/grid.hpp"
#include "swme/solver.hpp"

namespace swme {

std::string snapshot_header(int dims, int order);

void write_snapshot(const GridField& field, std::ostream& out);

/// snapshot_t<t with 6 decimals>.csv
std::string snapshot_filename(double t);

/// Writes <dir>/snapshot_filename(t) and returns its path.
std::filesystem::path write_snapshot_file(const GridField& field, double t, const std::filesystem::path& dir);

/// Rebuilds a uniform grid from the cell centres; ghosts are filled with
/// outflow conditions. Throws ParseError for malformed content.
GridField read_snapshot(std::istream& in);

/// Reads a file; the time is parsed from a snapshot_t*.csv name and is 0
/// otherwise. Throws FileNotFoundError if the file cannot be opened.
Snapshot read_snapshot_file(const std::filesystem::path& path);

}  // namespace swme
