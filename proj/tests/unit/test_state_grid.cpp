#include <cmath>

#include <gtest/gtest.h>

#include "swme/errors.hpp"
#include "swme/grid.hpp"
#include "swme/model.hpp"

using namespace swme;

TEST(StateLayout, Ordering) {
  const StateLayout one(1, 2);
  EXPECT_EQ(one.size(), 4);
  EXPECT_EQ(one.momentum(Direction::x), 1);
  EXPECT_EQ(one.moment(Direction::x, 2), 3);
  EXPECT_THROW(one.momentum(Direction::y), DomainError);
  EXPECT_THROW(one.moment(Direction::x, 3), DomainError);

  const StateLayout two(2, 2);
  EXPECT_EQ(two.size(), 7);
  EXPECT_EQ(two.momentum(Direction::y), 2);
  EXPECT_EQ(two.moment(Direction::x, 1), 3);
  EXPECT_EQ(two.moment(Direction::y, 1), 4);
  EXPECT_EQ(two.moment(Direction::y, 2), 6);

  EXPECT_THROW(StateLayout(3, 0), ConfigError);
  EXPECT_THROW(StateLayout(1, -1), ConfigError);
}

TEST(MomentState, PrimitiveRoundTrip) {
  const MomentState s = MomentState::from_primitive(2, 0.5, {0.2, {0.1, -0.3}}, {-0.4, {0.05, 0.0}});
  EXPECT_DOUBLE_EQ(s.momentum(Direction::x), 0.1);
  EXPECT_DOUBLE_EQ(s.moment(Direction::y, 1), 0.025);
  EXPECT_DOUBLE_EQ(s.velocity(Direction::y), -0.4);
  EXPECT_DOUBLE_EQ(s.coefficient(Direction::x, 2), -0.3);
  const MomentCoefficients c = s.coefficients(Direction::x);
  EXPECT_DOUBLE_EQ(c.mean, 0.2);
  ASSERT_EQ(c.order(), 2);
  EXPECT_DOUBLE_EQ(c.alphas[0], 0.1);
}

TEST(MomentState, Errors) {
  EXPECT_THROW(MomentState::from_primitive(2, 1.0, {0.0, {0.1}}, {0.3, {}}), InputError);
  EXPECT_THROW(MomentState(StateLayout(1, 1), Eigen::VectorXd::Zero(4)), InputError);
  MomentState s(1, 0);
  s.conserved()[1] = std::numeric_limits<double>::infinity();
  EXPECT_FALSE(s.is_finite());
}

TEST(GridField, GeometryAndMass) {
  GridField f(1, 0, 10, 1, 0.1, 0.1);
  EXPECT_DOUBLE_EQ(f.x_center(0), 0.05);
  EXPECT_EQ(f.interior_cells(), 10u);
  for (int i = 0; i < 10; ++i) f.set_state(i, MomentState::from_primitive(1, 1.0 + i, {0.0, {}}));
  EXPECT_NEAR(f.total_mass(), 0.1 * 55.0, 1e-14);

  GridField g(2, 1, 4, 5, 0.25, 0.2, 1.0, 2.0);
  EXPECT_DOUBLE_EQ(g.y_center(4), 2.9);
  EXPECT_EQ(g.components(), 5);
  EXPECT_THROW(g.set_state(0, 0, MomentState(1, 1)), InputError);
  EXPECT_THROW(f.max_abs_difference(g), InputError);
}

TEST(GridField, InvalidShape) {
  EXPECT_THROW(GridField(1, 0, 2, 1, 0.1, 0.1), ConfigError);
  EXPECT_THROW(GridField(2, 0, 4, 2, 0.1, 0.1), ConfigError);
  EXPECT_THROW(GridField(1, 0, 4, 1, 0.0, 0.1), ConfigError);
}

namespace {

GridField ramp(int dims) {
  GridField f(dims, 1, 4, dims == 1 ? 1 : 4, 0.25, 0.25);
  for (int j = 0; j < f.ny(); ++j) {
    for (int i = 0; i < f.nx(); ++i) {
      f.set_state(i, j, MomentState::from_primitive(dims, 1.0 + i + 10.0 * j, {0.5, {0.1}}, {-0.25, {0.2}}));
    }
  }
  return f;
}

}  // namespace

TEST(Boundary, OutflowCopiesNeighbour) {
  GridField f = ramp(2);
  apply_boundary(f);
  EXPECT_EQ(f.state(-1, 2).conserved(), f.state(0, 2).conserved());
  EXPECT_EQ(f.state(4, 1).conserved(), f.state(3, 1).conserved());
  EXPECT_EQ(f.state(2, -1).conserved(), f.state(2, 0).conserved());
  EXPECT_EQ(f.state(2, 4).conserved(), f.state(2, 3).conserved());
}

TEST(Boundary, PeriodicWraps) {
  GridField f = ramp(1);
  f.boundaries() = BoundarySet::all(BoundaryCondition::periodic());
  apply_boundary(f);
  EXPECT_EQ(f.state(-1).conserved(), f.state(3).conserved());
  EXPECT_EQ(f.state(4).conserved(), f.state(0).conserved());
}

TEST(Boundary, ReflectiveFlipsNormalComponents) {
  GridField f = ramp(2);
  f.boundaries() = BoundarySet::all(BoundaryCondition::reflective());
  apply_boundary(f);
  const MomentState in = f.state(0, 1);
  const MomentState ghost = f.state(-1, 1);
  EXPECT_DOUBLE_EQ(ghost.h(), in.h());
  EXPECT_DOUBLE_EQ(ghost.momentum(Direction::x), -in.momentum(Direction::x));
  EXPECT_DOUBLE_EQ(ghost.moment(Direction::x, 1), -in.moment(Direction::x, 1));
  EXPECT_DOUBLE_EQ(ghost.momentum(Direction::y), in.momentum(Direction::y));
  const MomentState top = f.state(1, 4);
  EXPECT_DOUBLE_EQ(top.momentum(Direction::y), -f.state(1, 3).momentum(Direction::y));
  EXPECT_DOUBLE_EQ(top.moment(Direction::x, 1), f.state(1, 3).moment(Direction::x, 1));
}

TEST(Boundary, InflowUsesPrescribedState) {
  GridField f = ramp(1);
  const MomentState in = MomentState::from_primitive(1, 2.0, {0.3, {0.1}});
  f.boundaries().west = BoundaryCondition::fixed(in);
  apply_boundary(f);
  EXPECT_EQ(f.state(-1).conserved(), in.conserved());
}

TEST(Boundary, InvalidInflow) {
  GridField f = ramp(1);
  f.boundaries().west.kind = BoundaryKind::inflow;
  EXPECT_THROW(apply_boundary(f), ConfigError);
  f.boundaries().west = BoundaryCondition::fixed(MomentState::from_primitive(1, 1.0, {0.0, {}}));
  EXPECT_THROW(apply_boundary(f), ConfigError);
  f.boundaries().west = BoundaryCondition::fixed(MomentState::from_primitive(1, 0.0, {0.0, {0.0}}));
  EXPECT_THROW(apply_boundary(f), ConfigError);
}
