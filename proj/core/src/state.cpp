#include "swme/state.hpp"

#include <string>

#include "swme/errors.hpp"

namespace swme {

StateLayout::StateLayout(int dims, int order) : dims_(dims), order_(order) {
  if (dims != 1 && dims != 2) throw ConfigError("dims must be 1 or 2, got " + std::to_string(dims));
  if (order < 0) throw ConfigError("moment order must be non-negative, got " + std::to_string(order));
}

int StateLayout::momentum(Direction d) const {
  if (d == Direction::x) return 1;
  if (dims_ == 1) throw DomainError("y-momentum requested for a 1D state");
  return 2;
}

int StateLayout::moment(Direction d, int j) const {
  if (j < 1 || j > order_) {
    throw DomainError("moment index " + std::to_string(j) + " outside 1.." + std::to_string(order_));
  }
  if (dims_ == 1) {
    if (d == Direction::y) throw DomainError("beta moment requested for a 1D state");
    return 1 + j;
  }
  return (d == Direction::x ? 3 : 4) + 2 * (j - 1);
}

MomentState::MomentState(int dims, int order)
    : layout_(dims, order), u_(Eigen::VectorXd::Zero(layout_.size())) {}

MomentState::MomentState(const StateLayout& layout, Eigen::VectorXd conserved)
    : layout_(layout), u_(std::move(conserved)) {
  if (u_.size() != layout_.size()) {
    throw InputError("conserved vector has " + std::to_string(u_.size()) + " entries, layout expects " +
                     std::to_string(layout_.size()));
  }
}

MomentState MomentState::from_primitive(int dims, double h, const MomentCoefficients& u,
                                        const MomentCoefficients& v) {
  const int order = u.order();
  MomentState s(dims, order);
  s.u_[StateLayout::height] = h;
  s.u_[s.layout_.momentum(Direction::x)] = h * u.mean;
  for (int j = 1; j <= order; ++j) s.u_[s.layout_.moment(Direction::x, j)] = h * u.alphas[j - 1];
  if (dims == 2) {
    if (v.order() != order && !(v.order() == 0 && v.mean == 0.0)) {
      throw InputError("u and v coefficient orders differ");
    }
    s.u_[s.layout_.momentum(Direction::y)] = h * v.mean;
    for (int j = 1; j <= v.order(); ++j) s.u_[s.layout_.moment(Direction::y, j)] = h * v.alphas[j - 1];
  }
  return s;
}

MomentCoefficients MomentState::coefficients(Direction d) const {
  MomentCoefficients c;
  c.mean = velocity(d);
  c.alphas.resize(static_cast<std::size_t>(order()));
  for (int j = 1; j <= order(); ++j) c.alphas[static_cast<std::size_t>(j - 1)] = coefficient(d, j);
  return c;
}

}  // namespace swme
