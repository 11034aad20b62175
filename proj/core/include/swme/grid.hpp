#pragma once

#include <optional>
#include <span>
#include <vector>

#include "swme/state.hpp"

namespace swme {

enum class BoundaryKind { outflow, inflow, reflective, periodic };

struct BoundaryCondition {
  BoundaryKind kind = BoundaryKind::outflow;
  /// Ghost state for inflow sides.
  std::optional<MomentState> inflow;

  static BoundaryCondition outflow() { return {}; }
  static BoundaryCondition periodic() { return {BoundaryKind::periodic, std::nullopt}; }
  static BoundaryCondition reflective() { return {BoundaryKind::reflective, std::nullopt}; }
  static BoundaryCondition fixed(MomentState state) { return {BoundaryKind::inflow, std::move(state)}; }
};

/// West/east bound x, south/north bound y (unused in 1D).
struct BoundarySet {
  BoundaryCondition west;
  BoundaryCondition east;
  BoundaryCondition south;
  BoundaryCondition north;

  static BoundarySet all(const BoundaryCondition& bc) { return {bc, bc, bc, bc}; }
};

/// Structured 1D or 2D cell field with one ghost layer per side. Interior
/// cells are i in [0, nx), j in [0, ny); ghosts sit at -1 and nx (ny). In 1D
/// ny == 1 and there are no y ghosts. Cell (i, j) is centred at
/// (x0 + (i + 1/2) dx, y0 + (j + 1/2) dy).
class GridField {
 public:
  GridField(int dims, int order, int nx, int ny, double dx, double dy, double x0 = 0.0, double y0 = 0.0);

  int dims() const noexcept { return layout_.dims(); }
  int order() const noexcept { return layout_.order(); }
  const StateLayout& layout() const noexcept { return layout_; }
  int components() const noexcept { return layout_.size(); }
  int nx() const noexcept { return nx_; }
  int ny() const noexcept { return ny_; }
  double dx() const noexcept { return dx_; }
  double dy() const noexcept { return dy_; }
  double x0() const noexcept { return x0_; }
  double y0() const noexcept { return y0_; }
  double x_center(int i) const noexcept { return x0_ + (i + 0.5) * dx_; }
  double y_center(int j) const noexcept { return y0_ + (j + 0.5) * dy_; }
  std::size_t interior_cells() const noexcept {
    return static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_);
  }

  std::span<double> cell(int i, int j = 0) noexcept {
    return {data_.data() + offset(i, j), static_cast<std::size_t>(components())};
  }
  std::span<const double> cell(int i, int j = 0) const noexcept {
    return {data_.data() + offset(i, j), static_cast<std::size_t>(components())};
  }

  MomentState state(int i, int j = 0) const;
  void set_state(int i, int j, const MomentState& s);
  void set_state(int i, const MomentState& s) { set_state(i, 0, s); }

  BoundarySet& boundaries() noexcept { return bc_; }
  const BoundarySet& boundaries() const noexcept { return bc_; }

  /// sum h dx (dy) over interior cells.
  double total_mass() const;
  /// Max |a - b| over interior cells and components; grids must match.
  double max_abs_difference(const GridField& other) const;

 private:
  std::size_t offset(int i, int j) const noexcept {
    const int row = dims() == 1 ? 0 : j + 1;
    return (static_cast<std::size_t>(row) * static_cast<std::size_t>(nx_ + 2) + static_cast<std::size_t>(i + 1)) *
           static_cast<std::size_t>(components());
  }

  StateLayout layout_;
  int nx_;
  int ny_;
  double dx_;
  double dy_;
  double x0_;
  double y0_;
  BoundarySet bc_;
  std::vector<double> data_;
};

/// Fills ghost cells from the boundary specification. Throws ConfigError for
/// inflow sides without a valid state.
void apply_boundary(GridField& field);

}  // namespace swme
