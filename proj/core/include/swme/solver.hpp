#pragma once

// First-order path-conservative finite-volume solver for the moment models on
// structured grids.

#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "swme/basis.hpp"
#include "swme/grid.hpp"
#include "swme/model.hpp"

namespace swme {

struct StepReport {
  double t = 0.0;  ///< time at the end of the step
  double dt = 0.0;
  double max_speed = 0.0;
  int floored_cells = 0;
  /// At least one wave speed fell back to the analytic bound.
  bool degraded_speed = false;
};

enum class Stepper { automatic, explicit_euler, semi_implicit };

/// automatic resolves to semi_implicit for the standard family (stiff
/// friction) and explicit_euler for the modified family.
Stepper resolve_stepper(Stepper requested, Family family);

/// Rusanov-type path-conservative fluctuations along the straight segment
/// from `left` to `right`:
///   D^- = 1/2 (A_mid dU - s dU),  D^+ = 1/2 (A_mid dU + s dU)
/// with A_mid the directional matrix at the midpoint state and s the larger
/// of the two cell wave speeds.
std::pair<Eigen::VectorXd, Eigen::VectorXd> fluctuations(const MomentState& left, const MomentState& right,
                                                         const ModelSpec& spec, Direction dir);

/// Same with explicit tensors and viscosity speed.
std::pair<Eigen::VectorXd, Eigen::VectorXd> fluctuations(const MomentState& left, const MomentState& right,
                                                         const ModelSpec& spec, Direction dir,
                                                         const BasisTensors& tensors, double speed);

/// cfl / max_cells(s_x / dx + s_y / dy), capped at `max_dt`. Returns `max_dt`
/// when every wave speed vanishes. Throws DomainError unless 0 < cfl <= 1.
double cfl_dt(const GridField& field, const ModelSpec& spec, double cfl,
              double max_dt = std::numeric_limits<double>::infinity());

/// Forward Euler: fluctuations and friction source evaluated at t^n.
/// Ghost cells of the input are refreshed internally. Throws StepError on
/// non-finite results; cells driven below kHeightFloor are floored (h set to
/// the floor, velocities and moments zeroed) and counted.
std::pair<GridField, StepReport> step_explicit(const GridField& field, const ModelSpec& spec,
                                               const BasisTensors& tensors, double dt, double t = 0.0);

/// Fluctuations explicit, friction backward Euler: per cell and direction
/// (I + dt M(h^{n+1})) q^{n+1} = q*, q = (h u_m, h alpha_1..N).
std::pair<GridField, StepReport> step_semi_implicit(const GridField& field, const ModelSpec& spec,
                                                    const BasisTensors& tensors, double dt, double t = 0.0);

struct Snapshot {
  double t = 0.0;
  GridField field;
};

struct RunOptions {
  double cfl = 0.7;
  Stepper stepper = Stepper::automatic;
  /// Safety stop; 0 means unlimited.
  std::size_t max_steps = 0;
  /// Called after every accepted step.
  std::function<void(const StepReport&, const GridField&)> observer;
};

struct RunResult {
  std::vector<Snapshot> snapshots;
  std::vector<StepReport> steps;
  bool ok = true;
  /// Set when a step failed; the last snapshot is then the last valid state.
  std::string diagnostics;
};

/// Advances `initial` to `t_end`, clipping steps so every output time is hit
/// exactly. An empty `output_times` means {t_end}. Throws DomainError for
/// t_end < 0 or output times outside [0, t_end].
RunResult run(const GridField& initial, const ModelSpec& spec, double t_end, std::vector<double> output_times,
              const RunOptions& options = {});

}  // namespace swme
