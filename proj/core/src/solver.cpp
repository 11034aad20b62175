#include "swme/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include <Eigen/LU>

#include "swme/errors.hpp"
#include "swme/parallel.hpp"

namespace swme {
namespace {

// Ghost-filled copy of a field together with per-cell wave speeds.
struct Prepared {
  GridField field;
  std::vector<double> speed_x;
  std::vector<double> speed_y;
  bool degraded = false;

  std::size_t index(int i, int j) const {
    const int row = field.dims() == 1 ? 0 : j + 1;
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(field.nx() + 2) + static_cast<std::size_t>(i + 1);
  }
};

Prepared prepare(const GridField& input, const ModelSpec& spec, const BasisTensors& tensors) {
  Prepared p{input, {}, {}, false};
  apply_boundary(p.field);
  const GridField& f = p.field;
  const int nx = f.nx();
  const int ny = f.ny();
  const std::size_t total = static_cast<std::size_t>(nx + 2) * static_cast<std::size_t>(f.dims() == 1 ? 1 : ny + 2);
  p.speed_x.assign(total, 0.0);
  if (f.dims() == 2) p.speed_y.assign(total, 0.0);

  std::vector<char> degraded(static_cast<std::size_t>(ny), 0);
  auto speed = [&](int i, int j, Direction d, std::size_t row) {
    const MomentState s = f.state(i, j);
    if (!s.is_finite()) throw StepError("non-finite state entering a step");
    if (!(s.h() > 0.0)) throw StepError("non-positive water height entering a step");
    const WaveSpeed w = max_wave_speed(s, spec, d, tensors);
    if (w.degraded) degraded[row] = 1;
    return w.value;
  };
  parallel_for(static_cast<std::size_t>(ny), [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      const int j = static_cast<int>(r);
      for (int i = -1; i <= nx; ++i) p.speed_x[p.index(i, j)] = speed(i, j, Direction::x, r);
      if (f.dims() == 2) {
        for (int i = 0; i < nx; ++i) p.speed_y[p.index(i, j)] = speed(i, j, Direction::y, r);
      }
    }
  });
  if (f.dims() == 2) {
    for (int i = 0; i < nx; ++i) {
      p.speed_y[p.index(i, -1)] = speed(i, -1, Direction::y, 0);
      p.speed_y[p.index(i, ny)] = speed(i, ny, Direction::y, 0);
    }
  }
  p.degraded = std::any_of(degraded.begin(), degraded.end(), [](char c) { return c != 0; });
  return p;
}

double max_interior_rate(const Prepared& p) {
  const GridField& f = p.field;
  double rate = 0.0;
  for (int j = 0; j < f.ny(); ++j) {
    for (int i = 0; i < f.nx(); ++i) {
      double r = p.speed_x[p.index(i, j)] / f.dx();
      if (f.dims() == 2) r += p.speed_y[p.index(i, j)] / f.dy();
      rate = std::max(rate, r);
    }
  }
  return rate;
}

double max_interior_speed(const Prepared& p) {
  const GridField& f = p.field;
  double s = 0.0;
  for (int j = 0; j < f.ny(); ++j) {
    for (int i = 0; i < f.nx(); ++i) {
      s = std::max(s, p.speed_x[p.index(i, j)]);
      if (f.dims() == 2) s = std::max(s, p.speed_y[p.index(i, j)]);
    }
  }
  return s;
}

double stable_dt(const Prepared& p, double cfl, double max_dt) {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw DomainError("cfl must lie in (0, 1]");
  const double rate = max_interior_rate(p);
  if (!(rate > 0.0)) return max_dt;
  return std::min(cfl / rate, max_dt);
}

// Fluctuations across every interface normal to `dir`. Interface k sits on the
// low side of cell k, so cell k receives D^+ from interface k and D^- from
// interface k+1.
struct InterfaceFluxes {
  std::vector<double> minus;
  std::vector<double> plus;
};

InterfaceFluxes interface_fluctuations(const Prepared& p, const ModelSpec& spec, const BasisTensors& tensors,
                                       Direction dir) {
  const GridField& f = p.field;
  const int m = f.components();
  const int nx = f.nx();
  const int ny = f.ny();
  const bool along_x = dir == Direction::x;
  const int ni = along_x ? nx + 1 : nx;
  const int nj = along_x ? ny : ny + 1;
  const std::vector<double>& speeds = along_x ? p.speed_x : p.speed_y;

  InterfaceFluxes out;
  const std::size_t count = static_cast<std::size_t>(ni) * static_cast<std::size_t>(nj) * static_cast<std::size_t>(m);
  out.minus.assign(count, 0.0);
  out.plus.assign(count, 0.0);

  parallel_for(static_cast<std::size_t>(nj), [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      const int j = static_cast<int>(r);
      for (int i = 0; i < ni; ++i) {
        const int li = along_x ? i - 1 : i;
        const int lj = along_x ? j : j - 1;
        const MomentState left = f.state(li, lj);
        const MomentState right = f.state(i, j);
        const double s = std::max(speeds[p.index(li, lj)], speeds[p.index(i, j)]);
        const auto [dm, dp] = fluctuations(left, right, spec, dir, tensors, s);
        const std::size_t base = (r * static_cast<std::size_t>(ni) + static_cast<std::size_t>(i)) * static_cast<std::size_t>(m);
        std::copy(dm.data(), dm.data() + m, out.minus.begin() + static_cast<std::ptrdiff_t>(base));
        std::copy(dp.data(), dp.data() + m, out.plus.begin() + static_cast<std::ptrdiff_t>(base));
      }
    }
  });
  return out;
}

BottomSlope bottom_slope(const GridField& f, const ModelSpec& spec, int i, int j) {
  if (!spec.bottom) return {0.0, 0.0};
  const double x = f.x_center(i);
  const double y = f.dims() == 2 ? f.y_center(j) : 0.0;
  const double dx = f.dx();
  BottomSlope slope{(spec.bottom(x + dx, y) - spec.bottom(x - dx, y)) / (2.0 * dx), 0.0};
  if (f.dims() == 2) {
    const double dy = f.dy();
    slope[1] = (spec.bottom(x, y + dy) - spec.bottom(x, y - dy)) / (2.0 * dy);
  }
  return slope;
}

std::string cell_name(const GridField& f, int i, int j) {
  std::ostringstream os;
  os << "cell (" << i;
  if (f.dims() == 2) os << ", " << j;
  os << ")";
  return os.str();
}

std::pair<GridField, StepReport> advance(const Prepared& p, const ModelSpec& spec, const BasisTensors& tensors,
                                         double dt, double t, bool implicit_friction) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("time step must be positive and finite");
  if (tensors.order() != p.field.order()) throw ConfigError("tensor order does not match field order");

  const GridField& cur = p.field;
  GridField next = cur;
  const int m = cur.components();
  const int nx = cur.nx();
  const int ny = cur.ny();
  const StateLayout& layout = cur.layout();

  const InterfaceFluxes fx = interface_fluctuations(p, spec, tensors, Direction::x);
  InterfaceFluxes fy;
  if (cur.dims() == 2) fy = interface_fluctuations(p, spec, tensors, Direction::y);

  const double rx = dt / cur.dx();
  const double ry = cur.dims() == 2 ? dt / cur.dy() : 0.0;
  const auto um = static_cast<std::size_t>(m);

  parallel_for(static_cast<std::size_t>(ny), [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      const int j = static_cast<int>(r);
      for (int i = 0; i < nx; ++i) {
        std::span<double> u = next.cell(i, j);
        const std::size_t left = (r * static_cast<std::size_t>(nx + 1) + static_cast<std::size_t>(i)) * um;
        for (std::size_t k = 0; k < um; ++k) u[k] -= rx * (fx.plus[left + k] + fx.minus[left + um + k]);
        if (cur.dims() == 2) {
          const std::size_t low = (r * static_cast<std::size_t>(nx) + static_cast<std::size_t>(i)) * um;
          const std::size_t high = low + static_cast<std::size_t>(nx) * um;
          for (std::size_t k = 0; k < um; ++k) u[k] -= ry * (fy.plus[low + k] + fy.minus[high + k]);
        }

        const MomentState old = cur.state(i, j);
        const BottomSlope slope = bottom_slope(cur, spec, i, j);
        if (!implicit_friction) {
          Eigen::VectorXd s;
          try {
            s = source(old, spec, tensors, slope);
          } catch (const Error& e) {
            throw StepError(cell_name(cur, i, j) + ": " + e.what());
          }
          for (std::size_t k = 0; k < um; ++k) u[k] += dt * s[static_cast<Eigen::Index>(k)];
          continue;
        }

        // Topography stays explicit; friction is solved at the new height.
        for (int d = 0; d < cur.dims(); ++d) {
          u[static_cast<std::size_t>(layout.momentum(static_cast<Direction>(d)))] -=
              dt * spec.G * old.h() * slope[static_cast<std::size_t>(d)];
        }
        const double h_new = u[0];
        if (!(h_new >= kHeightFloor) || !std::isfinite(h_new)) continue;  // floored below
        const int N = layout.order();
        const Eigen::MatrixXd K = Eigen::MatrixXd::Identity(N + 1, N + 1) + dt * relaxation_matrix(spec, tensors, h_new);
        const Eigen::PartialPivLU<Eigen::MatrixXd> lu(K);
        const double det = lu.determinant();
        if (!std::isfinite(det) || det == 0.0) {
          throw StepError(cell_name(cur, i, j) + ": singular implicit friction system");
        }
        for (int d = 0; d < cur.dims(); ++d) {
          const auto dir = static_cast<Direction>(d);
          Eigen::VectorXd q(N + 1);
          q[0] = u[static_cast<std::size_t>(layout.momentum(dir))];
          for (int jj = 1; jj <= N; ++jj) q[jj] = u[static_cast<std::size_t>(layout.moment(dir, jj))];
          q = lu.solve(q);
          u[static_cast<std::size_t>(layout.momentum(dir))] = q[0];
          for (int jj = 1; jj <= N; ++jj) u[static_cast<std::size_t>(layout.moment(dir, jj))] = q[jj];
        }
      }
    }
  });

  StepReport report;
  report.t = t + dt;
  report.dt = dt;
  report.max_speed = max_interior_speed(p);
  report.degraded_speed = p.degraded;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      std::span<double> u = next.cell(i, j);
      for (const double v : u) {
        if (!std::isfinite(v)) throw StepError("non-finite value in " + cell_name(next, i, j));
      }
      if (u[0] < kHeightFloor) {
        std::fill(u.begin(), u.end(), 0.0);
        u[0] = kHeightFloor;
        ++report.floored_cells;
      }
    }
  }
  return {std::move(next), report};
}

}  // namespace

Stepper resolve_stepper(Stepper requested, Family family) {
  if (requested != Stepper::automatic) return requested;
  return family == Family::standard ? Stepper::semi_implicit : Stepper::explicit_euler;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> fluctuations(const MomentState& left, const MomentState& right,
                                                         const ModelSpec& spec, Direction dir,
                                                         const BasisTensors& tensors, double speed) {
  if (!left.is_finite() || !right.is_finite() || !std::isfinite(speed)) {
    throw EvaluationError("non-finite input to fluctuations");
  }
  const Eigen::VectorXd jump = right.conserved() - left.conserved();
  if (jump.isZero(0.0)) {
    return {Eigen::VectorXd::Zero(jump.size()), Eigen::VectorXd::Zero(jump.size())};
  }
  const MomentState mid(left.layout(), 0.5 * (left.conserved() + right.conserved()));
  const Eigen::VectorXd a_jump = system_matrix(mid, spec, dir, tensors) * jump;
  return {0.5 * (a_jump - speed * jump), 0.5 * (a_jump + speed * jump)};
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> fluctuations(const MomentState& left, const MomentState& right,
                                                         const ModelSpec& spec, Direction dir) {
  const BasisTensors& tensors = cached_tensors(left.order());
  const double s = std::max(max_wave_speed(left, spec, dir, tensors).value,
                            max_wave_speed(right, spec, dir, tensors).value);
  return fluctuations(left, right, spec, dir, tensors, s);
}

double cfl_dt(const GridField& field, const ModelSpec& spec, double cfl, double max_dt) {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw DomainError("cfl must lie in (0, 1]");
  return stable_dt(prepare(field, spec, cached_tensors(field.order())), cfl, max_dt);
}

std::pair<GridField, StepReport> step_explicit(const GridField& field, const ModelSpec& spec,
                                               const BasisTensors& tensors, double dt, double t) {
  return advance(prepare(field, spec, tensors), spec, tensors, dt, t, false);
}

std::pair<GridField, StepReport> step_semi_implicit(const GridField& field, const ModelSpec& spec,
                                                    const BasisTensors& tensors, double dt, double t) {
  return advance(prepare(field, spec, tensors), spec, tensors, dt, t, true);
}

RunResult run(const GridField& initial, const ModelSpec& spec, double t_end, std::vector<double> output_times,
              const RunOptions& options) {
  spec.validate();
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw DomainError("t_end must be finite and >= 0");
  if (!(options.cfl > 0.0 && options.cfl <= 1.0)) throw DomainError("cfl must lie in (0, 1]");
  if (output_times.empty()) output_times.push_back(t_end);
  for (const double t : output_times) {
    if (!(t >= 0.0 && t <= t_end)) throw DomainError("output time " + std::to_string(t) + " outside [0, t_end]");
  }
  std::sort(output_times.begin(), output_times.end());
  output_times.erase(std::unique(output_times.begin(), output_times.end()), output_times.end());

  const BasisTensors& tensors = cached_tensors(initial.order());
  const bool implicit = resolve_stepper(options.stepper, spec.family) == Stepper::semi_implicit;

  RunResult result;
  GridField field = initial;
  apply_boundary(field);
  double t = 0.0;
  std::size_t next_output = 0;
  if (output_times.front() == 0.0) {
    result.snapshots.push_back({0.0, field});
    ++next_output;
  }

  while (next_output < output_times.size()) {
    const double target = output_times[next_output];
    try {
      if (options.max_steps != 0 && result.steps.size() >= options.max_steps) {
        throw StepError("step limit reached");
      }
      const Prepared p = prepare(field, spec, tensors);
      const double remaining = target - t;
      double dt = stable_dt(p, options.cfl, remaining);
      const bool hits_target = dt >= remaining * (1.0 - 1e-12);
      if (hits_target) dt = remaining;
      auto [next, report] = advance(p, spec, tensors, dt, t, implicit);
      t = hits_target ? target : t + dt;
      report.t = t;
      field = std::move(next);
      apply_boundary(field);
      result.steps.push_back(report);
      if (options.observer) options.observer(report, field);
    } catch (const Error& e) {
      result.ok = false;
      std::ostringstream os;
      os << "step " << result.steps.size() + 1 << " from t = " << t << " failed: " << e.what();
      result.diagnostics = os.str();
      result.snapshots.push_back({t, field});
      return result;
    }
    if (t == target) {
      result.snapshots.push_back({t, field});
      ++next_output;
    }
  }
  return result;
}

}  // namespace swme
