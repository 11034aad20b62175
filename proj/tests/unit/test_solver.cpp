#include <cmath>

#include <gtest/gtest.h>

#include "swme/errors.hpp"
#include "swme/scenarios.hpp"
#include "swme/solver.hpp"

using namespace swme;

namespace {

ModelSpec spec_of(Family family, int order, double gamma = 0.0) {
  ModelSpec s;
  s.family = family;
  s.order = order;
  s.G = 1.5e-3;
  s.eps = 0.015;
  s.gamma = gamma;
  s.re0inv = 4.444e-7;
  return s;
}

GridField flat(int dims, int order, int n, double h) {
  GridField f(dims, order, n, dims == 1 ? 1 : n, 1.0 / n, 1.0 / n);
  MomentCoefficients zero{0.0, std::vector<double>(static_cast<std::size_t>(order), 0.0)};
  for (int j = 0; j < f.ny(); ++j) {
    for (int i = 0; i < f.nx(); ++i) f.set_state(i, j, MomentState::from_primitive(dims, h, zero, zero));
  }
  return f;
}

GridField dam(int n, int order, double u) {
  GridField f(1, order, n, 1, 1.0 / n, 1.0);
  for (int i = 0; i < n; ++i) {
    MomentCoefficients c{u, std::vector<double>(static_cast<std::size_t>(order), 0.0)};
    if (order > 0) c.alphas[0] = 0.5 * u;
    f.set_state(i, MomentState::from_primitive(1, f.x_center(i) < 0.5 ? 1.0 : 2.0 / 3.0, c));
  }
  return f;
}

}  // namespace

TEST(Fluctuations, ZeroJumpGivesZero) {
  const MomentState s = MomentState::from_primitive(1, 0.8, {0.1, {0.05}});
  const auto [dm, dp] = fluctuations(s, s, spec_of(Family::standard, 1), Direction::x);
  EXPECT_EQ(dm.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(dp.cwiseAbs().maxCoeff(), 0.0);
}

TEST(Fluctuations, SumIsMidpointMatrixTimesJump) {
  const ModelSpec spec = spec_of(Family::modified, 2);
  const MomentState l = MomentState::from_primitive(2, 1.0, {0.1, {0.02, 0.0}}, {-0.1, {0.0, 0.01}});
  const MomentState r = MomentState::from_primitive(2, 0.7, {0.2, {-0.01, 0.03}}, {0.05, {0.02, 0.0}});
  for (const Direction d : {Direction::x, Direction::y}) {
    const auto [dm, dp] = fluctuations(l, r, spec, d);
    const Eigen::VectorXd jump = r.conserved() - l.conserved();
    const MomentState mid(l.layout(), 0.5 * (l.conserved() + r.conserved()));
    const Eigen::VectorXd expected = system_matrix(mid, spec, d) * jump;
    EXPECT_LE((dm + dp - expected).cwiseAbs().maxCoeff(), 1e-15);
    const double s = std::max(max_wave_speed(l, spec, d).value, max_wave_speed(r, spec, d).value);
    EXPECT_LE((dp - dm - s * jump).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(Fluctuations, SweHeightJump) {
  const ModelSpec spec = spec_of(Family::standard, 0);
  const MomentState l = MomentState::from_primitive(1, 1.0, {0.0, {}});
  const MomentState r = MomentState::from_primitive(1, 0.5, {0.0, {}});
  const auto [dm, dp] = fluctuations(l, r, spec, Direction::x);
  const double s = std::sqrt(spec.G);
  EXPECT_NEAR(dm[0], 0.25 * s, 1e-15);
  EXPECT_NEAR(dp[0], -0.25 * s, 1e-15);
  EXPECT_NEAR(dm[1], 0.5 * spec.G * 0.75 * -0.5, 1e-15);
}

TEST(Fluctuations, NonFiniteInput) {
  MomentState l = MomentState::from_primitive(1, 1.0, {0.0, {}});
  MomentState r = l;
  r.conserved()[1] = std::nan("");
  EXPECT_THROW(fluctuations(l, r, spec_of(Family::standard, 0), Direction::x), EvaluationError);
}

TEST(CflDt, RestingWater) {
  const ModelSpec spec = spec_of(Family::standard, 0);
  GridField one(1, 0, 40, 1, 0.025, 1.0);
  for (int i = 0; i < 40; ++i) one.set_state(i, MomentState::from_primitive(1, 1.0, {0.0, {}}));
  EXPECT_NEAR(cfl_dt(one, spec, 0.7), 0.7 * 0.025 / std::sqrt(1.5e-3), 1e-12);
  EXPECT_NEAR(cfl_dt(one, spec, 0.7), 0.4518, 1e-4);
  GridField two = flat(2, 0, 40, 1.0);
  EXPECT_NEAR(cfl_dt(two, spec, 0.7), 0.5 * cfl_dt(one, spec, 0.7), 1e-14);
  EXPECT_DOUBLE_EQ(cfl_dt(one, spec, 0.7, 0.1), 0.1);
  EXPECT_THROW(cfl_dt(one, spec, 0.0), DomainError);
  EXPECT_THROW(cfl_dt(one, spec, 1.5), DomainError);
}

TEST(CflDt, VanishingSpeedsReturnCap) {
  ModelSpec spec = spec_of(Family::standard, 0);
  spec.G = 1e-300;
  GridField f = flat(1, 0, 10, 1e-8);
  EXPECT_DOUBLE_EQ(cfl_dt(f, spec, 0.5, 2.0), 2.0);
}

TEST(Step, LakeAtRestIsExact) {
  for (const Family family : {Family::standard, Family::modified}) {
    const ModelSpec spec = spec_of(family, 2, 1e5);
    GridField f = flat(2, 2, 16, 0.9);
    const GridField initial = f;
    for (int k = 0; k < 100; ++k) {
      const double dt = cfl_dt(f, spec, 0.7);
      f = family == Family::standard ? step_semi_implicit(f, spec, cached_tensors(2), dt).first
                                     : step_explicit(f, spec, cached_tensors(2), dt).first;
    }
    EXPECT_EQ(f.max_abs_difference(initial), 0.0);
  }
}

TEST(Step, FrictionlessSweSchemesCoincide) {
  // Without friction the implicit solve is the identity.
  const ModelSpec spec = spec_of(Family::standard, 0, 0.0);
  const GridField f = dam(100, 0, 0.1);
  const double dt = cfl_dt(f, spec, 0.7);
  const auto a = step_explicit(f, spec, cached_tensors(0), dt).first;
  const auto b = step_semi_implicit(f, spec, cached_tensors(0), dt).first;
  EXPECT_LE(a.max_abs_difference(b), 1e-15);
}

TEST(Step, SemiImplicitRelaxesTowardsNoBottomSlip) {
  const ModelSpec spec = spec_of(Family::standard, 1, 1e5);
  GridField f(1, 1, 3, 1, 1.0, 1.0);
  for (int i = 0; i < 3; ++i) f.set_state(i, MomentState::from_primitive(1, 1.0, {0.1, {0.0}}));
  f.boundaries() = BoundarySet::all(BoundaryCondition::periodic());
  const GridField g = step_semi_implicit(f, spec, cached_tensors(1), 1e3).first;
  const MomentState s = g.state(1);
  EXPECT_NEAR(s.velocity(Direction::x) + s.coefficient(Direction::x, 1), 0.0, 1e-6);
  EXPECT_LT(std::abs(s.velocity(Direction::x)), 0.1);
}

TEST(Step, SemiImplicitContractsWeightedNorm) {
  const ModelSpec spec = spec_of(Family::standard, 2, 1e5);
  GridField f(1, 2, 3, 1, 1.0, 1.0);
  for (int i = 0; i < 3; ++i) f.set_state(i, MomentState::from_primitive(1, 1.0, {0.1, {-0.05, 0.02}}));
  f.boundaries() = BoundarySet::all(BoundaryCondition::periodic());
  auto norm = [](const MomentState& s) {
    double n = 0.0;
    n += s.momentum(Direction::x) * s.momentum(Direction::x);
    for (int j = 1; j <= 2; ++j) n += s.moment(Direction::x, j) * s.moment(Direction::x, j) / (2.0 * j + 1.0);
    return n;
  };
  double previous = norm(f.state(1));
  for (const double dt : {1e-9, 1e-6, 1e-3, 1.0, 1e3}) {
    f = step_semi_implicit(f, spec, cached_tensors(2), dt).first;
    const double n = norm(f.state(1));
    EXPECT_LE(n, previous * (1.0 + 1e-14)) << dt;
    previous = n;
  }
}

TEST(Step, FloorsAndCountsDryCells) {
  // A thin film draining in both directions with an oversized step.
  const ModelSpec spec = spec_of(Family::standard, 0);
  GridField f(1, 0, 5, 1, 0.1, 1.0);
  const double u[] = {-1.0, -1.0, 0.0, 1.0, 1.0};
  for (int i = 0; i < 5; ++i) f.set_state(i, MomentState::from_primitive(1, 1e-6, {u[i], {}}));
  const auto [g, report] = step_explicit(f, spec, cached_tensors(0), 0.2);
  EXPECT_GE(report.floored_cells, 1);
  for (int i = 0; i < 5; ++i) {
    EXPECT_GE(g.state(i).h(), kHeightFloor);
    EXPECT_TRUE(g.state(i).is_finite());
  }
  EXPECT_EQ(g.state(2).h(), kHeightFloor);
  EXPECT_EQ(g.state(2).momentum(Direction::x), 0.0);
}

TEST(Step, NanRaisesStepError) {
  GridField f = flat(1, 0, 10, 1.0);
  f.cell(4)[1] = std::nan("");
  EXPECT_THROW(step_explicit(f, spec_of(Family::standard, 0), cached_tensors(0), 0.01), StepError);
  EXPECT_THROW(step_semi_implicit(f, spec_of(Family::standard, 0), cached_tensors(0), 0.01), StepError);
}

TEST(Stepper, AutomaticChoice) {
  EXPECT_EQ(resolve_stepper(Stepper::automatic, Family::standard), Stepper::semi_implicit);
  EXPECT_EQ(resolve_stepper(Stepper::automatic, Family::modified), Stepper::explicit_euler);
  EXPECT_EQ(resolve_stepper(Stepper::explicit_euler, Family::standard), Stepper::explicit_euler);
}

TEST(Run, ZeroEndTimeReturnsInitial) {
  const GridField f = dam(50, 0, 0.0);
  const RunResult r = run(f, spec_of(Family::modified, 0), 0.0, {});
  ASSERT_TRUE(r.ok);
  ASSERT_EQ(r.snapshots.size(), 1u);
  EXPECT_EQ(r.snapshots[0].t, 0.0);
  EXPECT_EQ(r.snapshots[0].field.max_abs_difference(f), 0.0);
  EXPECT_TRUE(r.steps.empty());
}

TEST(Run, HitsOutputTimesExactly) {
  const GridField f = dam(100, 1, 0.05);
  const RunResult r = run(f, spec_of(Family::modified, 1, 1e5), 3.0, {2.0, 0.0, 1.0, 2.0, 3.0});
  ASSERT_TRUE(r.ok) << r.diagnostics;
  ASSERT_EQ(r.snapshots.size(), 4u);
  for (int k = 0; k < 4; ++k) EXPECT_DOUBLE_EQ(r.snapshots[static_cast<std::size_t>(k)].t, k);
  EXPECT_DOUBLE_EQ(r.steps.back().t, 3.0);
}

TEST(Run, InvalidTimes) {
  const GridField f = dam(50, 0, 0.0);
  EXPECT_THROW(run(f, spec_of(Family::modified, 0), -1.0, {}), DomainError);
  EXPECT_THROW(run(f, spec_of(Family::modified, 0), 1.0, {2.0}), DomainError);
}

TEST(Run, FailureKeepsLastValidSnapshot) {
  GridField f = dam(50, 0, 0.0);
  RunOptions opts;
  int calls = 0;
  opts.observer = [&](const StepReport&, const GridField&) { ++calls; };
  f.cell(10)[1] = std::nan("");
  const RunResult r = run(f, spec_of(Family::modified, 0), 1.0, {0.0, 1.0}, opts);
  EXPECT_FALSE(r.ok);
  EXPECT_FALSE(r.diagnostics.empty());
  EXPECT_EQ(calls, 0);
}

TEST(Run, MassConservedWithPeriodicEnds) {
  GridField f = dam(200, 1, 0.05);
  f.boundaries() = BoundarySet::all(BoundaryCondition::periodic());
  const double m0 = f.total_mass();
  const RunResult r = run(f, spec_of(Family::modified, 1, 1e5), 2.0, {});
  ASSERT_TRUE(r.ok);
  EXPECT_NEAR(r.snapshots.back().field.total_mass(), m0, 1e-13);
}

TEST(Run, FrontPositionIsResolutionIndependent) {
  const ModelSpec spec = make_model_spec(Family::modified, 0, nondimensionalize(PhysicalSetup{}));
  auto front = [&](int nx) {
    ScenarioConfig cfg = dambreak_1d();
    cfg.nx = nx;
    cfg.output_times = {3.0};
    const RunResult r = run_scenario(cfg, spec);
    EXPECT_TRUE(r.ok);
    const GridField& g = r.snapshots.back().field;
    // Mid-level crossing of the right-moving bore, between the state at the
    // dam site and the undisturbed downstream height.
    const double level = 0.5 * (g.state(nx / 2).h() + 2.0 / 3.0);
    double x = 0.0;
    for (int i = nx / 2; i + 1 < g.nx(); ++i) {
      const double a = g.state(i).h() - level, b = g.state(i + 1).h() - level;
      if (a >= 0.0 && b < 0.0) x = g.x_center(i) + g.dx() * a / (a - b);
    }
    return x;
  };
  const double coarse = front(400);
  const double fine = front(4000);
  EXPECT_GT(coarse, 0.5);
  EXPECT_NEAR(coarse, fine, 0.05 * (fine - 0.5));
}
