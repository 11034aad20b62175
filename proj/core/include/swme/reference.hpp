#pragma once

// Ingestion and reduction of volume-of-fluid reference data, and
// model-versus-reference error metrics.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "swme/grid.hpp"
#include "swme/scenarios.hpp"

namespace swme {

/// Structured (x[, y], z) grid of cell-centre samples in SI units. Storage is
/// z fastest, then y, then x. `y` is empty for x-z data.
struct ReferenceDataset {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> z;
  std::vector<double> fraction;
  std::vector<double> u;
  std::vector<double> v;  ///< empty for x-z data
  std::optional<double> time;
  /// Fractions that were clipped into [0, 1] while loading.
  std::size_t clipped = 0;

  int dims() const noexcept { return y.empty() ? 1 : 2; }
  std::size_t nx() const noexcept { return x.size(); }
  std::size_t ny() const noexcept { return y.empty() ? 1 : y.size(); }
  std::size_t nz() const noexcept { return z.size(); }
  std::size_t columns() const noexcept { return nx() * ny(); }
  std::size_t index(std::size_t ix, std::size_t iy, std::size_t iz) const noexcept {
    return (ix * ny() + iy) * nz() + iz;
  }
};

/// Parses the CSV schema `x,z,fraction,u` or `x,y,z,fraction,u,v` (header
/// required, `#` comments, optional `# time=<seconds>` comment). Throws
/// ParseError with the offending line for malformed rows, non-monotone axes
/// or shape mismatches.
ReferenceDataset parse_dataset(std::istream& in);

/// Throws FileNotFoundError if the file cannot be opened.
ReferenceDataset load_dataset(const std::filesystem::path& path);

void write_dataset(const ReferenceDataset& ds, std::ostream& out);

/// One value per horizontal column, x-major like the dataset.
struct ColumnField {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> values;

  std::size_t ny() const noexcept { return y.empty() ? 1 : y.size(); }
  double at(std::size_t ix, std::size_t iy = 0) const { return values.at(ix * ny() + iy); }
};

struct HeightField : ColumnField {
  double threshold = 0.45;
};

inline constexpr double kWaterThreshold = 0.45;

/// h = dz * #{cells with fraction >= threshold} per column. Throws
/// DomainError unless 0 < threshold < 1 and UnsupportedFormatError for
/// non-uniform or single-cell z axes.
HeightField extract_height(const ReferenceDataset& ds, double threshold = kWaterThreshold);

enum class AveragingMode {
  water_cells,        ///< mean of u over cells with fraction >= threshold
  fraction_weighted,  ///< sum(fraction u dz) / h over the whole column
};

struct DepthAverage {
  ColumnField u;
  ColumnField v;  ///< empty values for x-z data
};

/// Zero in dry columns. Throws DomainError if `heights` does not belong to
/// the dataset's grid.
DepthAverage depth_average(const ReferenceDataset& ds, const HeightField& heights,
                           AveragingMode mode = AveragingMode::water_cells);

struct ProfilePoint {
  double z = 0.0;
  double u = 0.0;
  double v = 0.0;
};

struct VerticalProfileSample {
  std::size_t ix = 0;
  std::size_t iy = 0;
  /// Horizontal distance from the requested point to the chosen column.
  double distance = 0.0;
  std::vector<ProfilePoint> points;
};

/// Water cells of the column nearest to (x, y). Throws DomainError when the
/// point lies outside the dataset's horizontal extent.
VerticalProfileSample vertical_profile(const ReferenceDataset& ds, double x, double y = 0.0,
                                       double threshold = kWaterThreshold);

enum class Quantity { height, mean_u, mean_v };

std::string to_string(Quantity q);

struct SliceSpec {
  Quantity quantity = Quantity::height;
  /// Axis along which the slice runs; the other coordinate is fixed at
  /// `location` (ignored for x-z data).
  Direction along = Direction::x;
  double location = 0.0;
};

struct ProfileSpec {
  double x = 0.0;
  double y = 0.0;
};

struct CompareOptions {
  std::vector<Quantity> quantities{Quantity::height, Quantity::mean_u};
  std::vector<SliceSpec> slices;
  std::vector<ProfileSpec> profiles;
  double threshold = kWaterThreshold;
  AveragingMode averaging = AveragingMode::water_cells;
  double time_tolerance = 1e-6;  ///< seconds
};

struct NormSet {
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
};

struct QuantityReport {
  std::string quantity;
  NormSet norms;
};

struct SeriesRecord {
  std::string name;
  std::string axis;  ///< "x", "y" or "z"
  std::vector<double> coordinate;
  std::vector<double> model;
  std::vector<double> reference;
};

struct ComparisonReport {
  std::vector<QuantityReport> quantities;
  std::vector<SeriesRecord> slices;
  std::vector<SeriesRecord> profiles;
  std::size_t columns_compared = 0;

  const QuantityReport* find(const std::string& quantity) const;
};

/// Model cells are sampled piecewise-constantly at the reference column
/// centres. L1 and L2 are weighted by the reference column area (or width).
/// The snapshot time is dimensionless and converted with L / U. Throws
/// ComparisonError for mismatched dimensions, times or disjoint domains.
ComparisonReport compare(const Snapshot& model, const PhysicalSetup& physical, const ReferenceDataset& ds,
                         const CompareOptions& options = {});

/// Writes <stem>_norms.csv (`quantity,norm,value`), one
/// <stem>_slice_<name>.csv per slice (`x,model,reference`) and one
/// <stem>_profile_<name>.csv per profile (`z,model,reference`). Returns the
/// files written.
std::vector<std::filesystem::path> write_report(const ComparisonReport& report, const std::filesystem::path& dir,
                                                const std::string& stem = "compare");

}  // namespace swme
