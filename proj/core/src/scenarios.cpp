#include "swme/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "swme/errors.hpp"

namespace swme {
namespace {

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

double linear_profile(double z) { return 0.25 * z; }

std::vector<double> integer_times(double t_end) {
  std::vector<double> times;
  for (int k = 0; k <= static_cast<int>(std::floor(t_end)); ++k) times.push_back(k);
  if (times.back() != t_end) times.push_back(t_end);
  return times;
}

void validate_side(const SideCondition& side, const char* name) {
  if (side.kind != BoundaryKind::inflow) return;
  if (!positive(side.hhat) || side.hhat < kHeightFloor) {
    throw ConfigError(std::string("inflow height on ") + name + " side must be positive");
  }
}

BoundaryCondition to_boundary(const SideCondition& side, const ScenarioConfig& cfg, int order) {
  if (side.kind != BoundaryKind::inflow) return {side.kind, std::nullopt};
  const MomentCoefficients u = project_initial_profile(side.u, cfg.physical, side.hhat, order);
  const MomentCoefficients v = project_initial_profile(side.v, cfg.physical, side.hhat, order);
  return BoundaryCondition::fixed(MomentState::from_primitive(cfg.dims, side.hhat, u, v));
}

}  // namespace

void PhysicalSetup::validate() const {
  if (!positive(L) || !positive(H) || !positive(U) || !positive(rho) || !positive(nu) || !positive(g)) {
    throw ConfigError("physical scales L, H, U, rho, nu, g must be positive and finite");
  }
  if (!std::isfinite(kappa) || kappa < 0.0) throw ConfigError("kappa must be finite and >= 0");
  if (!(H < L)) throw ConfigError("shallowness requires H < L");
}

DimensionlessParameters nondimensionalize(const PhysicalSetup& p) {
  p.validate();
  DimensionlessParameters d;
  d.eps = p.H / p.L;
  d.G = p.g * p.H / (p.U * p.U);
  d.gamma = p.kappa / (p.rho * p.U);
  d.gamma_over_eps = p.kappa / (d.eps * p.rho * p.U);
  d.re0inv = p.nu / (d.eps * p.U * p.H);
  return d;
}

PhysicalSetup redimensionalize(const DimensionlessParameters& d, double L, double U, double rho) {
  PhysicalSetup p;
  p.L = L;
  p.U = U;
  p.rho = rho;
  p.H = d.eps * L;
  p.g = d.G * U * U / p.H;
  p.kappa = d.gamma * rho * U;
  p.nu = d.re0inv * d.eps * U * p.H;
  p.validate();
  return p;
}

ModelSpec make_model_spec(Family family, int order, const DimensionlessParameters& d) {
  ModelSpec spec;
  spec.family = family;
  spec.order = order;
  spec.G = d.G;
  spec.eps = d.eps;
  spec.gamma = d.gamma;
  spec.re0inv = d.re0inv;
  spec.validate();
  return spec;
}

void ScenarioConfig::validate() const {
  physical.validate();
  if (dims != 1 && dims != 2) throw ConfigError("dims must be 1 or 2");
  if (!(x_max > x_min) || !std::isfinite(x_min) || !std::isfinite(x_max)) throw ConfigError("invalid x extent");
  if (nx < 3) throw ConfigError("nx must be >= 3");
  if (dims == 2) {
    if (!(y_max > y_min) || !std::isfinite(y_min) || !std::isfinite(y_max)) throw ConfigError("invalid y extent");
    if (ny < 3) throw ConfigError("ny must be >= 3");
  }
  if (!initial_hhat) throw ConfigError("scenario has no initial height");
  if (!std::isfinite(t_end) || t_end < 0.0) throw ConfigError("t_end must be finite and >= 0");
  for (const double t : output_times) {
    if (!(t >= 0.0 && t <= t_end)) throw ConfigError("output time " + std::to_string(t) + " outside [0, t_end]");
  }
  validate_side(west, "west");
  validate_side(east, "east");
  if (dims == 2) {
    validate_side(south, "south");
    validate_side(north, "north");
  }
}

ScenarioConfig dambreak_1d() {
  ScenarioConfig cfg;
  cfg.name = "dambreak1d";
  cfg.dims = 1;
  cfg.nx = 4000;
  cfg.ny = 1;
  cfg.initial_hhat = [](double x, double) { return x <= 50.0 ? 1.0 : 2.0 / 3.0; };
  cfg.initial_u = linear_profile;
  cfg.west = SideCondition::inflow(1.0, linear_profile);
  cfg.east = SideCondition::outflow();
  cfg.t_end = 3.0;
  cfg.output_times = integer_times(cfg.t_end);
  return cfg;
}

ScenarioConfig radial_collapse_2d() {
  ScenarioConfig cfg;
  cfg.name = "radial2d";
  cfg.dims = 2;
  cfg.nx = 400;
  cfg.ny = 400;
  cfg.initial_hhat = [](double x, double y) {
    return std::hypot(x - 50.0, y - 50.0) <= 15.0 ? 1.0 : 2.0 / 3.0;
  };
  cfg.t_end = 3.0;
  cfg.output_times = integer_times(cfg.t_end);
  return cfg;
}

ScenarioConfig collapse_with_inflow_2d() {
  ScenarioConfig cfg = radial_collapse_2d();
  cfg.name = "inflow2d";
  cfg.initial_u = linear_profile;
  cfg.initial_v = linear_profile;
  cfg.west = SideCondition::inflow(2.0 / 3.0, linear_profile, linear_profile);
  cfg.south = SideCondition::inflow(2.0 / 3.0, linear_profile, linear_profile);
  return cfg;
}

ScenarioConfig scenario_by_name(const std::string& name) {
  if (name == "dambreak1d") return dambreak_1d();
  if (name == "radial2d") return radial_collapse_2d();
  if (name == "inflow2d") return collapse_with_inflow_2d();
  throw ConfigError("unknown scenario '" + name + "' (expected dambreak1d, radial2d or inflow2d)");
}

MomentCoefficients project_initial_profile(const VerticalProfile& profile, const PhysicalSetup& p, double hhat,
                                           int order) {
  if (!profile) return MomentCoefficients{0.0, std::vector<double>(static_cast<std::size_t>(order), 0.0)};
  const double depth = p.H * hhat;
  return project_profile([&](double zeta) { return profile(depth * zeta) / p.U; }, order);
}

GridField build_field(const ScenarioConfig& cfg, int order) {
  cfg.validate();
  const double L = cfg.physical.L;
  const double dx = (cfg.x_max - cfg.x_min) / L / cfg.nx;
  const double dy = cfg.dims == 2 ? (cfg.y_max - cfg.y_min) / L / cfg.ny : 1.0;
  GridField field(cfg.dims, order, cfg.nx, cfg.dims == 2 ? cfg.ny : 1, dx, dy, cfg.x_min / L,
                  cfg.dims == 2 ? cfg.y_min / L : 0.0);

  for (int j = 0; j < field.ny(); ++j) {
    for (int i = 0; i < field.nx(); ++i) {
      const double x = field.x_center(i) * L;
      const double y = cfg.dims == 2 ? field.y_center(j) * L : 0.0;
      const double hhat = cfg.initial_hhat(x, y);
      if (!std::isfinite(hhat) || hhat < kHeightFloor) {
        throw ConfigError("initial height below the floor at x = " + std::to_string(x) + " m");
      }
      const MomentCoefficients u = project_initial_profile(cfg.initial_u, cfg.physical, hhat, order);
      const MomentCoefficients v = project_initial_profile(cfg.initial_v, cfg.physical, hhat, order);
      field.set_state(i, j, MomentState::from_primitive(cfg.dims, hhat, u, v));
    }
  }

  BoundarySet& bc = field.boundaries();
  bc.west = to_boundary(cfg.west, cfg, order);
  bc.east = to_boundary(cfg.east, cfg, order);
  if (cfg.dims == 2) {
    bc.south = to_boundary(cfg.south, cfg, order);
    bc.north = to_boundary(cfg.north, cfg, order);
  }
  apply_boundary(field);
  return field;
}

RunResult run_scenario(const ScenarioConfig& cfg, const ModelSpec& spec, const RunOptions& options) {
  return run(build_field(cfg, spec.order), spec, cfg.t_end, cfg.output_times, options);
}

std::vector<std::pair<double, double>> redimensionalize_profile(const MomentCoefficients& coeffs, double hhat,
                                                                double U, double H, const std::vector<double>& z_nodes) {
  if (!positive(hhat)) throw DomainError("hhat must be positive");
  const double depth = H * hhat;
  std::vector<std::pair<double, double>> out;
  out.reserve(z_nodes.size());
  for (const double z : z_nodes) {
    if (!(z >= 0.0 && z <= depth * (1.0 + 1e-12))) {
      throw DomainError("z = " + std::to_string(z) + " m lies outside the water column");
    }
    out.emplace_back(z, U * reconstruct_velocity(coeffs, std::min(z / depth, 1.0)));
  }
  return out;
}

}  // namespace swme
