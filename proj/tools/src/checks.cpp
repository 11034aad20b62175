#include "swme_app/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "swme/basis.hpp"
#include "swme/errors.hpp"
#include "swme/model.hpp"
#include "swme/oracle/quadrature.hpp"
#include "swme/reference.hpp"
#include "swme/scenarios.hpp"
#include "swme/solver.hpp"

namespace swme::app {
namespace {

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

MomentCoefficients random_coefficients(std::mt19937_64& rng, int order, double spread) {
  std::uniform_real_distribution<double> d(-spread, spread);
  MomentCoefficients c{d(rng), {}};
  for (int j = 0; j < order; ++j) c.alphas.push_back(d(rng));
  return c;
}

// Uniform three-cell periodic field; fluctuations vanish, so a step is a pure
// source update.
GridField single_cell(const MomentState& s) {
  GridField f(s.dims(), s.order(), 3, s.dims() == 2 ? 3 : 1, 1.0 / 3.0, 1.0 / 3.0);
  for (int j = 0; j < f.ny(); ++j) {
    for (int i = 0; i < f.nx(); ++i) f.set_state(i, j, s);
  }
  f.boundaries() = BoundarySet::all(BoundaryCondition::periodic());
  apply_boundary(f);
  return f;
}

ScenarioConfig example1(int nx) {
  ScenarioConfig cfg = dambreak_1d();
  cfg.nx = nx;
  return cfg;
}

double max_abs_um(const GridField& f) {
  double m = 0.0;
  for (int i = 0; i < f.nx(); ++i) m = std::max(m, std::abs(f.state(i).velocity(Direction::x)));
  return m;
}

}  // namespace

int front_interface(const GridField& field, double x_min) {
  int best = -1;
  double largest = -1.0;
  for (int i = 0; i + 1 < field.nx(); ++i) {
    const double x_face = field.x0() + (i + 1) * field.dx();
    if (x_face < x_min - 1e-12) continue;
    const double jump = std::abs(field.state(i + 1).h() - field.state(i).h());
    if (jump > largest) {
      largest = jump;
      best = i;
    }
  }
  return best;
}

CheckResult check_tensor_oracle(int max_order, double tol) {
  double worst = 0.0;
  for (int n = 1; n <= max_order; ++n) {
    const BasisTensors t = build_tensors(n);
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        worst = std::max(worst, std::abs(t.C(i, j) - oracle::tensor_C(i, j)));
        for (int k = 1; k <= n; ++k) {
          worst = std::max(worst, std::abs(t.A(i, j, k) - oracle::tensor_A(i, j, k)));
          worst = std::max(worst, std::abs(t.B(i, j, k) - oracle::tensor_B(i, j, k)));
        }
      }
    }
  }
  const double c11 = build_tensors(1).C(1, 1);
  CheckResult r{"tensor oracle (N <= " + std::to_string(max_order) + ")", worst <= tol && c11 == 4.0, {}};
  r.detail = "max |diff| = " + fmt("%.3e", worst) + ", C_11 = " + fmt("%.17g", c11);
  return r;
}

CheckResult check_classification(int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> magnitude(0.01, 0.5);
  ModelSpec spec = make_model_spec(Family::standard, 1, nondimensionalize(PhysicalSetup{}));
  int wrong = 0;
  int counts[3] = {0, 0, 0};
  std::string first_failure;
  for (int s = 0; s < samples; ++s) {
    const int kind = s % 3;
    spec.order = 1 + (s / 3) % 3;
    MomentCoefficients u = random_coefficients(rng, spec.order, 0.5);
    MomentCoefficients v = random_coefficients(rng, spec.order, 0.5);
    const double sign = unit(rng) < 0.5 ? -1.0 : 1.0;
    if (kind == 0) u.alphas[0] = sign * magnitude(rng);
    if (kind == 1) u.alphas[0] = v.alphas[0] = 0.0;
    if (kind == 2) {
      u.alphas[0] = 0.0;
      v.alphas[0] = sign * magnitude(rng);
    }
    const MomentState state = MomentState::from_primitive(2, 0.2 + 1.8 * unit(rng), u, v);
    const Hyperbolicity expected = kind == 2 ? Hyperbolicity::weakly_hyperbolic : Hyperbolicity::hyperbolic;
    const Hyperbolicity got = classify_hyperbolicity(state, spec);
    ++counts[kind];
    if (got != expected) {
      if (wrong == 0) {
        first_failure = "; first miss: sample " + std::to_string(s) + " N=" + std::to_string(spec.order) + " got " +
                        std::string(to_string(got));
      }
      ++wrong;
    }
  }
  CheckResult r{"hyperbolicity classification", wrong == 0, {}};
  r.detail = std::to_string(wrong) + " misclassified of " + std::to_string(samples) + " (" +
             std::to_string(counts[0]) + " generic, " + std::to_string(counts[1]) + " zero, " +
             std::to_string(counts[2]) + " alpha_1 = 0)" + first_failure;
  return r;
}

CheckResult check_matrix_equality(int samples, std::uint64_t seed, double tol) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const DimensionlessParameters d = nondimensionalize(PhysicalSetup{});
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const int order = s % 4;
    const ModelSpec standard = make_model_spec(Family::standard, order, d);
    const ModelSpec modified = make_model_spec(Family::modified, order, d);
    const int dims = 1 + s % 2;
    const MomentState state = MomentState::from_primitive(dims, 0.05 + 2.0 * unit(rng), random_coefficients(rng, order, 1.0),
                                                          random_coefficients(rng, order, 1.0));
    for (int dir = 0; dir < dims; ++dir) {
      const auto direction = static_cast<Direction>(dir);
      const Eigen::MatrixXd a = system_matrix(state, standard, direction);
      const Eigen::MatrixXd b = system_matrix(state, modified, direction);
      worst = std::max(worst, (a - b).cwiseAbs().maxCoeff());
    }
  }
  return {"standard vs modified system matrices", worst <= tol,
          "max entry difference " + fmt("%.3e", worst) + " over " + std::to_string(samples) + " states"};
}

CheckResult check_semi_implicit_decay() {
  const ModelSpec spec = make_model_spec(Family::standard, 0, nondimensionalize(PhysicalSetup{}));
  const double u0 = 1.875e-3;
  const GridField initial = single_cell(MomentState::from_primitive(1, 1.0, {u0, {}}));
  const BasisTensors& tensors = cached_tensors(0);
  const double cfl = cfl_dt(initial, spec, 0.7);
  const double gamma_over_eps = spec.gamma / spec.eps;

  bool ok = true;
  double worst_model_error = 0.0;
  std::ostringstream detail;
  detail << "gamma/eps = " << fmt("%.4g", gamma_over_eps) << ", CFL dt = " << fmt("%.4g", cfl);
  for (const double dt : {cfl, 1e-9, 1e-6, 1e-3, 1.0, 1e3}) {
    GridField f = initial;
    double previous = u0;
    for (int n = 1; n <= 20; ++n) {
      f = step_semi_implicit(f, spec, tensors, dt).first;
      const double u = f.state(1).velocity(Direction::x);
      if (!(std::abs(u) <= std::abs(previous)) || !(std::abs(u) <= u0) || !std::isfinite(u)) ok = false;
      previous = u;
      // Backward Euler for du/dt = -(gamma/eps) u / h.
      const double expected = u0 * std::pow(1.0 + dt * gamma_over_eps, -n);
      worst_model_error = std::max(worst_model_error, std::abs(u - expected) / u0);
    }
  }
  detail << "; |u_m| monotone " << (ok ? "yes" : "NO") << ", deviation from backward-Euler recursion "
         << fmt("%.2e", worst_model_error);
  return {"semi-implicit stiff decay", ok && worst_model_error <= 1e-12, detail.str()};
}

CheckResult check_explicit_decay(double bar_gamma_target, double tol) {
  DimensionlessParameters d = nondimensionalize(PhysicalSetup{});
  if (bar_gamma_target > 0.0) {
    // bar_gamma -> 2 Re0^-1 / h as kappa -> inf.
    d.re0inv = 0.5 * bar_gamma_target;
  }
  const ModelSpec spec = make_model_spec(Family::modified, 0, d);
  const double h = 1.0;
  const double u0 = 1.875e-3;
  const double bg = bar_gamma(spec, h);
  const double t_end = 1.0;
  const double dt_nominal = 1e-3 / bg;

  GridField f = single_cell(MomentState::from_primitive(1, h, {u0, {}}));
  const BasisTensors& tensors = cached_tensors(0);
  double t = 0.0;
  int steps = 0;
  while (t < t_end) {
    const double dt = std::min(dt_nominal, t_end - t);
    f = step_explicit(f, spec, tensors, dt, t).first;
    t = (dt == t_end - t) ? t_end : t + dt;
    ++steps;
  }
  const double u = f.state(1).velocity(Direction::x);
  const double exact = u0 * std::exp(-bg * t_end / h);
  const double rel = std::abs(u - exact) / std::abs(exact);
  CheckResult r{bar_gamma_target > 0.0 ? "explicit modified decay (bar_gamma ~ " + fmt("%g", bar_gamma_target) + ")"
                                       : "explicit modified decay (default parameters)",
                rel <= tol, {}};
  r.detail = "bar_gamma = " + fmt("%.4e", bg) + ", dt = " + fmt("%.4e", std::min(dt_nominal, t_end)) + " (" +
             std::to_string(steps) + " steps), relative error " + fmt("%.3e", rel);
  return r;
}

CheckResult check_periodic_mass(int nx, double t_end, double tol) {
  const DimensionlessParameters d = nondimensionalize(PhysicalSetup{});
  double worst = 0.0;
  std::ostringstream detail;
  for (const Family family : {Family::standard, Family::modified}) {
    const ModelSpec spec = make_model_spec(family, 1, d);
    GridField f = build_field(example1(nx), 1);
    f.boundaries() = BoundarySet::all(BoundaryCondition::periodic());
    apply_boundary(f);
    const RunResult r = run(f, spec, t_end, {t_end});
    if (!r.ok) return {"periodic mass conservation", false, r.diagnostics};
    const double drift = std::abs(r.snapshots.back().field.total_mass() - f.total_mass()) / t_end;
    worst = std::max(worst, drift);
    if (family == Family::modified) detail << "; ";
    detail << to_string(family) << " drift/t = " << fmt("%.3e", drift) << " (" << r.steps.size() << " steps)";
  }
  return {"periodic mass conservation", worst <= tol, detail.str()};
}

CheckResult check_lake_at_rest(int nx, int steps, double tol) {
  const DimensionlessParameters d = nondimensionalize(PhysicalSetup{});
  double worst = 0.0;
  for (const Family family : {Family::standard, Family::modified}) {
    const ModelSpec spec = make_model_spec(family, 2, d);
    const BasisTensors& tensors = cached_tensors(2);
    ScenarioConfig cfg = example1(nx);
    cfg.initial_hhat = [](double, double) { return 2.0 / 3.0; };
    cfg.initial_u = {};
    cfg.west = SideCondition::outflow();
    const GridField initial = build_field(cfg, 2);
    GridField f = initial;
    const bool implicit = resolve_stepper(Stepper::automatic, family) == Stepper::semi_implicit;
    for (int n = 0; n < steps; ++n) {
      const double dt = cfl_dt(f, spec, 0.7);
      f = implicit ? step_semi_implicit(f, spec, tensors, dt).first : step_explicit(f, spec, tensors, dt).first;
    }
    worst = std::max(worst, f.max_abs_difference(initial));
  }
  return {"lake at rest", worst <= tol,
          "max deviation " + fmt("%.3e", worst) + " after " + std::to_string(steps) + " steps, Nx = " +
              std::to_string(nx)};
}

CheckResult check_headline(int nx) {
  const DimensionlessParameters d = nondimensionalize(PhysicalSetup{});
  const ScenarioConfig cfg = example1(nx);
  const RunResult swe = run_scenario(cfg, make_model_spec(Family::standard, 0, d));
  const RunResult mswe = run_scenario(cfg, make_model_spec(Family::modified, 0, d));
  if (!swe.ok || !mswe.ok) return {"headline: SWE frozen, MSWE moves", false, swe.diagnostics + mswe.diagnostics};

  const GridField& start = swe.snapshots.front().field;
  const int front0 = front_interface(start, 0.5);
  const int front_swe = front_interface(swe.snapshots.back().field, 0.5);
  const int front_mswe = front_interface(mswe.snapshots.back().field, 0.5);
  const double u_swe = max_abs_um(swe.snapshots.back().field);
  const double u_mswe = max_abs_um(mswe.snapshots.back().field);
  const int moved_swe = std::abs(front_swe - front0);
  const int moved_mswe = std::abs(front_mswe - front0);
  const bool ok = u_swe <= 0.1 * u_mswe && moved_mswe >= 10 && moved_swe < 2;
  std::ostringstream detail;
  detail << "max|u_m| SWE " << fmt("%.3e", u_swe) << " vs MSWE " << fmt("%.3e", u_mswe) << "; front moved SWE "
         << moved_swe << " cells, MSWE " << moved_mswe << " cells (Nx = " << nx << ")";
  return {"headline: SWE frozen, MSWE moves", ok, detail.str()};
}

CheckResult check_vertical_profile(int nx) {
  const DimensionlessParameters d = nondimensionalize(PhysicalSetup{});
  const ScenarioConfig cfg = example1(nx);
  const double x = 55.0 / cfg.physical.L;

  double bottom[2] = {0.0, 0.0};
  double peak[2] = {0.0, 0.0};
  int idx = 0;
  for (const Family family : {Family::standard, Family::modified}) {
    const RunResult r = run_scenario(cfg, make_model_spec(family, 1, d));
    if (!r.ok) return {"vertical profile at x = 55 m", false, r.diagnostics};
    const GridField& f = r.snapshots.back().field;
    const int i = std::clamp(static_cast<int>(std::floor((x - f.x0()) / f.dx())), 0, f.nx() - 1);
    const MomentCoefficients c = f.state(i).coefficients(Direction::x);
    for (int k = 0; k <= 100; ++k) peak[idx] = std::max(peak[idx], std::abs(reconstruct_velocity(c, k / 100.0)));
    bottom[idx] = std::abs(reconstruct_velocity(c, 0.0));
    ++idx;
  }
  const bool forced = bottom[0] <= 1e-3 * peak[0];
  const bool free = bottom[1] > 1e-3 * peak[1];
  std::ostringstream detail;
  detail << "HSWME |u(0)|/max = " << fmt("%.3e", peak[0] > 0 ? bottom[0] / peak[0] : 0.0) << ", MHSWME |u(0)|/max = "
         << fmt("%.3e", peak[1] > 0 ? bottom[1] / peak[1] : 0.0);
  return {"vertical profile at x = 55 m", forced && free && peak[0] > 0.0, detail.str()};
}

CheckResult check_self_convergence(const std::vector<int>& grids, double min_order) {
  const DimensionlessParameters d = nondimensionalize(PhysicalSetup{});
  const ModelSpec spec = make_model_spec(Family::modified, 0, d);
  std::vector<GridField> fields;
  for (const int nx : grids) {
    ScenarioConfig cfg = example1(nx);
    cfg.output_times = {cfg.t_end};
    const RunResult r = run_scenario(cfg, spec);
    if (!r.ok) return {"self-convergence", false, r.diagnostics};
    fields.push_back(r.snapshots.back().field);
  }
  std::vector<double> errors;
  for (std::size_t k = 0; k + 1 < fields.size(); ++k) {
    const GridField& coarse = fields[k];
    const GridField& fine = fields[k + 1];
    if (fine.nx() != 2 * coarse.nx()) throw ConfigError("successive grids must double");
    double e = 0.0;
    for (int i = 0; i < coarse.nx(); ++i) {
      const double restricted = 0.5 * (fine.state(2 * i).h() + fine.state(2 * i + 1).h());
      e += std::abs(coarse.state(i).h() - restricted) * coarse.dx();
    }
    errors.push_back(e);
  }
  bool ok = true;
  std::ostringstream detail;
  detail << "L1(h):";
  for (const double e : errors) detail << ' ' << fmt("%.3e", e);
  detail << "; orders:";
  for (std::size_t k = 0; k + 1 < errors.size(); ++k) {
    const double order = std::log2(errors[k] / errors[k + 1]);
    detail << ' ' << fmt("%.3f", order);
    if (!(order >= min_order)) ok = false;
  }
  return {"self-convergence (MSWE, Example 1)", ok && errors.size() >= 2, detail.str()};
}

CheckResult check_reference_pipeline() {
  const double H = PhysicalSetup{}.H;
  const std::size_t nz = 640;

  // Column of height 2H with the bottom 320 cells wet.
  auto fixture = [&](double dz, auto velocity) {
    ReferenceDataset ds;
    ds.x = {55.0};
    for (std::size_t k = 0; k < nz; ++k) ds.z.push_back((static_cast<double>(k) + 0.5) * dz);
    for (std::size_t k = 0; k < nz; ++k) {
      ds.fraction.push_back(k < nz / 2 ? 1.0 : 0.0);
      ds.u.push_back(velocity(ds.z[k]));
    }
    std::stringstream csv;
    write_dataset(ds, csv);
    return parse_dataset(csv);
  };

  const ReferenceDataset half = fixture(2.0 / 640.0 * H, [](double) { return 0.0; });
  const double dz = half.z[1] - half.z[0];
  const double h = extract_height(half, kWaterThreshold).at(0);
  const bool height_ok = h == 0.5 * (static_cast<double>(nz) * dz) && std::abs(h - H) <= 1e-9;

  const ReferenceDataset linear = fixture(2.0 / 640.0, [](double z) { return 0.25 * z; });
  const HeightField hl = extract_height(linear, kWaterThreshold);
  const double um = depth_average(linear, hl).u.at(0);
  const bool mean_ok = std::abs(hl.at(0) - 1.0) <= 1e-9 && std::abs(um - 0.125) <= 1e-12;

  std::ostringstream detail;
  detail << "extract_height = " << fmt("%.15g", h) << " m (column " << fmt("%.15g", nz * dz) << " m); depth_average = "
         << fmt("%.15g", um) << " m/s at h = " << fmt("%.15g", hl.at(0)) << " m";
  return {"reference pipeline", height_ok && mean_ok, detail.str()};
}

std::vector<std::string> suite_names() { return {"tensors", "hyperbolicity", "conservation", "relaxation", "claims", "convergence", "reference"};
}

std::vector<CheckResult> run_suite(const std::string& name) {
  if (name == "tensors") return {check_tensor_oracle()};
  if (name == "hyperbolicity") return {check_classification(), check_matrix_equality()};
  if (name == "conservation") return {check_periodic_mass(), check_lake_at_rest()};
  if (name == "relaxation") {
    return {check_semi_implicit_decay(), check_explicit_decay(0.0), check_explicit_decay(0.1)};
  }
  if (name == "claims") return {check_headline(), check_vertical_profile()};
  if (name == "convergence") return {check_self_convergence()};
  if (name == "reference") return {check_reference_pipeline()};
  throw ConfigError("suite: unknown verification suite '" + name +
                    "' (expected tensors, hyperbolicity, conservation, relaxation, claims, convergence or reference)");
}

}  // namespace swme::app
