#pragma once

#include <Eigen/Core>

#include "swme/basis.hpp"

namespace swme {

enum class Direction { x, y };

/// Component ordering of the conserved vector.
///   1D: (h, h u_m, h alpha_1, ..., h alpha_N)
///   2D: (h, h u_m, h v_m, h alpha_1, h beta_1, ..., h alpha_N, h beta_N)
class StateLayout {
 public:
  StateLayout(int dims, int order);

  int dims() const noexcept { return dims_; }
  int order() const noexcept { return order_; }
  int size() const noexcept { return dims_ == 1 ? 2 + order_ : 3 + 2 * order_; }

  static constexpr int height = 0;
  /// Index of h u_m (x) or h v_m (y).
  int momentum(Direction d) const;
  /// Index of h alpha_j (x) or h beta_j (y), j in 1..N.
  int moment(Direction d, int j) const;

  bool operator==(const StateLayout&) const = default;

 private:
  int dims_;
  int order_;
};

/// Per-cell conserved state U of the moment system.
class MomentState {
 public:
  MomentState(int dims, int order);
  MomentState(const StateLayout& layout, Eigen::VectorXd conserved);

  /// Builds U from h and the velocity coefficients. `v` is ignored in 1D and
  /// must have the same order as `u` in 2D.
  static MomentState from_primitive(int dims, double h, const MomentCoefficients& u,
                                    const MomentCoefficients& v = {});

  const StateLayout& layout() const noexcept { return layout_; }
  int dims() const noexcept { return layout_.dims(); }
  int order() const noexcept { return layout_.order(); }
  int size() const noexcept { return layout_.size(); }

  double h() const { return u_[StateLayout::height]; }
  double momentum(Direction d) const { return u_[layout_.momentum(d)]; }
  double moment(Direction d, int j) const { return u_[layout_.moment(d, j)]; }

  /// u_m or v_m.
  double velocity(Direction d) const { return momentum(d) / h(); }
  /// alpha_j or beta_j.
  double coefficient(Direction d, int j) const { return moment(d, j) / h(); }
  MomentCoefficients coefficients(Direction d) const;

  const Eigen::VectorXd& conserved() const noexcept { return u_; }
  Eigen::VectorXd& conserved() noexcept { return u_; }

  bool is_finite() const { return u_.allFinite(); }

 private:
  StateLayout layout_;
  Eigen::VectorXd u_;
};

}  // namespace swme
