#include "swme/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "swme/errors.hpp"
#include "swme/model.hpp"

namespace swme {
namespace {

void copy_cell(std::span<const double> from, std::span<double> to) { std::copy(from.begin(), from.end(), to.begin()); }

void negate_normal(const StateLayout& layout, Direction d, std::span<double> cell) {
  cell[static_cast<std::size_t>(layout.momentum(d))] *= -1.0;
  for (int j = 1; j <= layout.order(); ++j) cell[static_cast<std::size_t>(layout.moment(d, j))] *= -1.0;
}

void check_inflow(const BoundaryCondition& bc, const StateLayout& layout, const char* side) {
  if (!bc.inflow) throw ConfigError(std::string("inflow boundary on ") + side + " side has no state");
  const MomentState& s = *bc.inflow;
  if (!(s.layout() == layout)) {
    throw ConfigError(std::string("inflow state on ") + side + " side does not match the field layout");
  }
  if (!s.is_finite() || !(s.h() >= kHeightFloor)) {
    throw ConfigError(std::string("inflow state on ") + side + " side violates h > 0 / finiteness");
  }
}

// Fills `ghost` from `inside` (adjacent interior) and `opposite` (interior
// cell on the far side, for periodic wrap).
void fill(const BoundaryCondition& bc, const StateLayout& layout, Direction normal, const char* side,
          std::span<const double> inside, std::span<const double> opposite, std::span<double> ghost) {
  switch (bc.kind) {
    case BoundaryKind::outflow:
      copy_cell(inside, ghost);
      break;
    case BoundaryKind::periodic:
      copy_cell(opposite, ghost);
      break;
    case BoundaryKind::reflective:
      copy_cell(inside, ghost);
      negate_normal(layout, normal, ghost);
      break;
    case BoundaryKind::inflow: {
      check_inflow(bc, layout, side);
      const Eigen::VectorXd& u = bc.inflow->conserved();
      std::copy(u.data(), u.data() + u.size(), ghost.begin());
      break;
    }
  }
}

}  // namespace

GridField::GridField(int dims, int order, int nx, int ny, double dx, double dy, double x0, double y0)
    : layout_(dims, order), nx_(nx), ny_(dims == 1 ? 1 : ny), dx_(dx), dy_(dims == 1 ? 1.0 : dy), x0_(x0), y0_(y0) {
  if (nx < 3) throw ConfigError("nx must be >= 3, got " + std::to_string(nx));
  if (dims == 2 && ny < 3) throw ConfigError("ny must be >= 3, got " + std::to_string(ny));
  if (!(dx > 0.0) || !std::isfinite(dx)) throw ConfigError("dx must be positive");
  if (dims == 2 && (!(dy > 0.0) || !std::isfinite(dy))) throw ConfigError("dy must be positive");
  const std::size_t rows = dims == 1 ? 1 : static_cast<std::size_t>(ny_ + 2);
  data_.assign(rows * static_cast<std::size_t>(nx_ + 2) * static_cast<std::size_t>(components()), 0.0);
}

MomentState GridField::state(int i, int j) const {
  const auto c = cell(i, j);
  return MomentState(layout_, Eigen::Map<const Eigen::VectorXd>(c.data(), static_cast<Eigen::Index>(c.size())));
}

void GridField::set_state(int i, int j, const MomentState& s) {
  if (!(s.layout() == layout_)) throw InputError("state layout does not match the grid");
  const auto c = cell(i, j);
  std::copy(s.conserved().data(), s.conserved().data() + s.size(), c.begin());
}

double GridField::total_mass() const {
  double mass = 0.0;
  for (int j = 0; j < ny_; ++j) {
    for (int i = 0; i < nx_; ++i) mass += cell(i, j)[0];
  }
  return mass * dx_ * (dims() == 2 ? dy_ : 1.0);
}

double GridField::max_abs_difference(const GridField& other) const {
  if (!(other.layout_ == layout_) || other.nx_ != nx_ || other.ny_ != ny_) {
    throw InputError("grids differ in shape");
  }
  double diff = 0.0;
  for (int j = 0; j < ny_; ++j) {
    for (int i = 0; i < nx_; ++i) {
      const auto a = cell(i, j);
      const auto b = other.cell(i, j);
      for (std::size_t k = 0; k < a.size(); ++k) diff = std::max(diff, std::abs(a[k] - b[k]));
    }
  }
  return diff;
}

void apply_boundary(GridField& field) {
  const StateLayout& layout = field.layout();
  const BoundarySet& bc = field.boundaries();
  const int nx = field.nx();
  const int ny = field.ny();

  if (field.dims() == 1) {
    fill(bc.west, layout, Direction::x, "west", field.cell(0), field.cell(nx - 1), field.cell(-1));
    fill(bc.east, layout, Direction::x, "east", field.cell(nx - 1), field.cell(0), field.cell(nx));
    return;
  }
  for (int j = 0; j < ny; ++j) {
    fill(bc.west, layout, Direction::x, "west", field.cell(0, j), field.cell(nx - 1, j), field.cell(-1, j));
    fill(bc.east, layout, Direction::x, "east", field.cell(nx - 1, j), field.cell(0, j), field.cell(nx, j));
  }
  for (int i = 0; i < nx; ++i) {
    fill(bc.south, layout, Direction::y, "south", field.cell(i, 0), field.cell(i, ny - 1), field.cell(i, -1));
    fill(bc.north, layout, Direction::y, "north", field.cell(i, ny - 1), field.cell(i, 0), field.cell(i, ny));
  }
}

}  // namespace swme
