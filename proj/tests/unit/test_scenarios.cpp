#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "swme/errors.hpp"
#include "swme/scenarios.hpp"

using namespace swme;

TEST(Scaling, DefaultSetupParameters) {
  const DimensionlessParameters d = nondimensionalize(PhysicalSetup{});
  EXPECT_DOUBLE_EQ(d.eps, 0.015);
  EXPECT_NEAR(d.G, 1.4715e-3, 1e-17);
  EXPECT_NEAR(d.gamma, 1e5, 1e-9);
  EXPECT_NEAR(d.gamma_over_eps, 6.667e6, 1e3);
  EXPECT_NEAR(d.re0inv, 4.444e-7, 1e-10);
}

TEST(Scaling, RoundTrip) {
  PhysicalSetup p;
  p.L = 37.0;
  p.H = 0.9;
  p.U = 3.1;
  p.rho = 998.0;
  p.nu = 1.3e-6;
  p.g = 9.7;
  p.kappa = 12.5;
  const PhysicalSetup q = redimensionalize(nondimensionalize(p), p.L, p.U, p.rho);
  EXPECT_NEAR(q.H, p.H, 1e-14 * p.H);
  EXPECT_NEAR(q.g, p.g, 1e-14 * p.g);
  EXPECT_NEAR(q.nu, p.nu, 1e-14 * p.nu);
  EXPECT_NEAR(q.kappa, p.kappa, 1e-14 * p.kappa);
}

TEST(Scaling, InvalidSetups) {
  PhysicalSetup p;
  p.H = 200.0;
  EXPECT_THROW(nondimensionalize(p), ConfigError);
  p = {};
  p.kappa = -1.0;
  EXPECT_THROW(nondimensionalize(p), ConfigError);
  p = {};
  p.nu = 0.0;
  EXPECT_THROW(nondimensionalize(p), ConfigError);
}

TEST(Scaling, ModelSpecFromParameters) {
  const ModelSpec spec = make_model_spec(Family::modified, 2, nondimensionalize(PhysicalSetup{}));
  EXPECT_EQ(spec.family, Family::modified);
  EXPECT_EQ(spec.order, 2);
  EXPECT_NEAR(spec.G, 1.4715e-3, 1e-17);
}

TEST(Profile, LinearProfileCoefficients) {
  const MomentCoefficients c = project_initial_profile([](double z) { return 0.25 * z; }, PhysicalSetup{}, 1.0, 2);
  EXPECT_NEAR(c.mean, 1.875e-3, 1e-16);
  EXPECT_NEAR(c.alphas[0], -1.875e-3, 1e-16);
  EXPECT_NEAR(c.alphas[1], 0.0, 1e-16);
  const MomentCoefficients none = project_initial_profile({}, PhysicalSetup{}, 1.0, 1);
  EXPECT_EQ(none.mean, 0.0);
  EXPECT_EQ(none.alphas[0], 0.0);
}

TEST(Profile, RedimensionaliseRoundTrip) {
  const PhysicalSetup p;
  const double hhat = 2.0 / 3.0;
  auto profile = [](double z) { return 0.3 * z * z - 0.1 * z + 0.05; };
  const MomentCoefficients c = project_initial_profile(profile, p, hhat, 2);
  std::vector<double> z;
  for (int k = 0; k <= 10; ++k) z.push_back(p.H * hhat * k / 10.0);
  for (const auto& [zz, u] : redimensionalize_profile(c, hhat, p.U, p.H, z)) EXPECT_NEAR(u, profile(zz), 1e-14);
  EXPECT_THROW(redimensionalize_profile(c, hhat, p.U, p.H, {2.0}), DomainError);
  EXPECT_THROW(redimensionalize_profile(c, 0.0, p.U, p.H, {0.0}), DomainError);
}

TEST(Scenario, DamBreakInitialState) {
  ScenarioConfig cfg = dambreak_1d();
  EXPECT_EQ(cfg.nx, 4000);
  cfg.nx = 400;
  const GridField f = build_field(cfg, 1);
  EXPECT_DOUBLE_EQ(f.dx(), 1.0 / 400);
  EXPECT_DOUBLE_EQ(f.state(0).h(), 1.0);
  EXPECT_DOUBLE_EQ(f.state(399).h(), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(f.state(199).h(), 1.0);
  EXPECT_DOUBLE_EQ(f.state(200).h(), 2.0 / 3.0);
  EXPECT_NEAR(f.state(0).velocity(Direction::x), 1.875e-3, 1e-16);
  EXPECT_NEAR(f.state(399).velocity(Direction::x), 1.25e-3, 1e-16);
  EXPECT_EQ(f.boundaries().west.kind, BoundaryKind::inflow);
  EXPECT_EQ(f.boundaries().east.kind, BoundaryKind::outflow);
  EXPECT_DOUBLE_EQ(f.boundaries().west.inflow->h(), 1.0);
}

TEST(Scenario, RadialCollapseSymmetryAndMass) {
  ScenarioConfig cfg = radial_collapse_2d();
  EXPECT_EQ(cfg.nx, 400);
  EXPECT_EQ(cfg.ny, 400);
  cfg.nx = cfg.ny = 200;
  const GridField f = build_field(cfg, 1);
  for (int j = 0; j < 200; ++j) {
    for (int i = 0; i < 200; ++i) {
      ASSERT_EQ(f.state(i, j).h(), f.state(j, i).h());
      ASSERT_EQ(f.state(i, j).h(), f.state(199 - i, j).h());
    }
  }
  EXPECT_DOUBLE_EQ(f.state(100, 100).h(), 1.0);
  EXPECT_DOUBLE_EQ(f.state(0, 0).h(), 2.0 / 3.0);
  const double r = 0.15;
  const double exact = 2.0 / 3.0 + (1.0 / 3.0) * std::numbers::pi * r * r;
  EXPECT_NEAR(f.total_mass(), exact, 2e-3 * exact);
  EXPECT_EQ(f.state(50, 50).velocity(Direction::x), 0.0);
}

TEST(Scenario, InflowCollapse) {
  ScenarioConfig cfg = collapse_with_inflow_2d();
  cfg.nx = cfg.ny = 40;
  const GridField f = build_field(cfg, 2);
  EXPECT_EQ(f.boundaries().west.kind, BoundaryKind::inflow);
  EXPECT_EQ(f.boundaries().south.kind, BoundaryKind::inflow);
  EXPECT_EQ(f.boundaries().east.kind, BoundaryKind::outflow);
  const MomentState in = *f.boundaries().south.inflow;
  EXPECT_DOUBLE_EQ(in.h(), 2.0 / 3.0);
  EXPECT_NEAR(in.velocity(Direction::y), 1.25e-3, 1e-16);
  EXPECT_NEAR(in.velocity(Direction::x), in.velocity(Direction::y), 1e-18);
}

TEST(Scenario, ByName) {
  EXPECT_EQ(scenario_by_name("dambreak1d").dims, 1);
  EXPECT_EQ(scenario_by_name("radial2d").dims, 2);
  EXPECT_EQ(scenario_by_name("inflow2d").name, "inflow2d");
  EXPECT_THROW(scenario_by_name("tsunami"), ConfigError);
}

TEST(Scenario, Validation) {
  ScenarioConfig cfg = dambreak_1d();
  cfg.nx = 2;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = dambreak_1d();
  cfg.output_times = {4.0};
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = dambreak_1d();
  cfg.west = SideCondition::inflow(0.0, {});
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = dambreak_1d();
  cfg.initial_hhat = nullptr;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(Scenario, ShortRun) {
  ScenarioConfig cfg = dambreak_1d();
  cfg.nx = 100;
  cfg.t_end = 0.5;
  cfg.output_times = {0.0, 0.5};
  const RunResult r = run_scenario(cfg, make_model_spec(Family::modified, 1, nondimensionalize(cfg.physical)));
  ASSERT_TRUE(r.ok);
  ASSERT_EQ(r.snapshots.size(), 2u);
  EXPECT_DOUBLE_EQ(r.snapshots[1].t, 0.5);
}
