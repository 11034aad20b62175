#pragma once

// The three dam-break experiments and the physical <-> dimensionless scaling.

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "swme/basis.hpp"
#include "swme/grid.hpp"
#include "swme/model.hpp"
#include "swme/solver.hpp"

namespace swme {

/// SI scales and material constants.
struct PhysicalSetup {
  double L = 100.0;     ///< horizontal scale, m
  double H = 1.5;       ///< vertical scale, m
  double U = 100.0;     ///< velocity scale, m/s
  double rho = 1000.0;  ///< kg/m^3
  double nu = 1e-6;     ///< kinematic viscosity, m^2/s
  double g = 9.81;      ///< m/s^2
  double kappa = 1e10;  ///< Navier slip friction, kg/(m^2 s); 0 is free slip

  /// Throws ConfigError unless every scale is positive and finite, kappa >= 0
  /// and H < L.
  void validate() const;
};

struct DimensionlessParameters {
  double eps = 0.0;             ///< H / L
  double G = 0.0;               ///< g H / U^2
  double gamma = 0.0;           ///< kappa / (rho U)
  double gamma_over_eps = 0.0;  ///< kappa / (eps rho U)
  double re0inv = 0.0;          ///< nu / (eps U H)
};

DimensionlessParameters nondimensionalize(const PhysicalSetup& p);

/// Inverse of nondimensionalize given the scales that the dimensionless set
/// does not determine.
PhysicalSetup redimensionalize(const DimensionlessParameters& d, double L, double U, double rho);

ModelSpec make_model_spec(Family family, int order, const DimensionlessParameters& d);

/// Dimensional velocity profile u(z), z in metres above the bottom.
using VerticalProfile = std::function<double(double)>;

struct SideCondition {
  BoundaryKind kind = BoundaryKind::outflow;
  /// Inflow only: dimensionless height and SI profiles (empty means zero).
  double hhat = 0.0;
  VerticalProfile u;
  VerticalProfile v;

  static SideCondition outflow() { return {}; }
  static SideCondition inflow(double hhat, VerticalProfile u, VerticalProfile v = {}) {
    return {BoundaryKind::inflow, hhat, std::move(u), std::move(v)};
  }
};

struct ScenarioConfig {
  std::string name;
  int dims = 1;
  PhysicalSetup physical;
  /// Domain extents in metres; y is ignored in 1D.
  double x_min = 0.0;
  double x_max = 100.0;
  double y_min = 0.0;
  double y_max = 100.0;
  int nx = 400;
  int ny = 1;
  /// Dimensionless height at a cell centre given in metres.
  std::function<double(double, double)> initial_hhat;
  VerticalProfile initial_u;
  VerticalProfile initial_v;
  SideCondition west;
  SideCondition east;
  SideCondition south;
  SideCondition north;
  double t_end = 3.0;
  std::vector<double> output_times;

  /// Throws ConfigError on invalid extents, resolution, times or sides.
  void validate() const;
};

/// Example 1: 1D dam break on [0, 100] m, hhat 1 | 2/3 split at 50 m,
/// u = 0.25 z, inflow west / outflow east, Nx = 4000.
ScenarioConfig dambreak_1d();

/// Example 2: column of radius 15 m at (50, 50) with hhat 1 in water of
/// hhat 2/3, at rest, outflow on all sides, 400 x 400 cells.
ScenarioConfig radial_collapse_2d();

/// Example 3: the Example 2 geometry with u = v = 0.25 z, inflow of hhat 2/3
/// carrying the same profile at x = 0 and y = 0, outflow at x = y = 100.
ScenarioConfig collapse_with_inflow_2d();

/// dambreak1d, radial2d or inflow2d. Throws ConfigError otherwise.
ScenarioConfig scenario_by_name(const std::string& name);

/// Coefficients of a dimensional profile at local height hhat, in
/// dimensionless velocity units.
MomentCoefficients project_initial_profile(const VerticalProfile& profile, const PhysicalSetup& p, double hhat,
                                           int order);

/// Dimensionless initial field (coordinates scaled by L) with boundary
/// conditions attached. Membership tests use cell centres.
GridField build_field(const ScenarioConfig& cfg, int order);

/// build_field followed by run with the scenario's end and output times.
RunResult run_scenario(const ScenarioConfig& cfg, const ModelSpec& spec, const RunOptions& options = {});

/// u(z) = U [u_m + sum_j alpha_j phi_j(z / (H hhat))] at each node. Throws
/// DomainError for z outside [0, H hhat] or hhat <= 0.
std::vector<std::pair<double, double>> redimensionalize_profile(const MomentCoefficients& coeffs, double hhat,
                                                                double U, double H, const std::vector<double>& z_nodes);

}  // namespace swme
