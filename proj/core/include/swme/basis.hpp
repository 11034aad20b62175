#pragma once

// Scaled Legendre basis on the normalised vertical coordinate zeta in [0, 1],
// the coupling tensors of the moment system, and projection/reconstruction of
// vertical velocity profiles.

#include <functional>
#include <span>
#include <vector>

namespace swme {

/// phi_j(zeta) = P_j(1 - 2 zeta): orthogonal on [0, 1], phi_j(0) = 1 and
/// int_0^1 phi_j^2 = 1 / (2j + 1). Throws DomainError for j < 0 or zeta
/// outside [0, 1].
double legendre_phi(int j, double zeta);

/// d phi_j / d zeta.
double legendre_phi_derivative(int j, double zeta);

/// int_0^zeta phi_j(s) ds.
double legendre_phi_integral(int j, double zeta);

/// Gauss-Legendre nodes and weights mapped to [0, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Exact for polynomials of degree <= 2 * points - 1.
GaussRule gauss_legendre(int points);

/// Coupling tensors of the moment equations for a fixed order N:
///   A_ijk = (2i+1) int phi_i phi_j phi_k
///   B_ijk = (2i+1) int phi_i' (int_0^zeta phi_j) phi_k
///   C_ij  = int phi_i' phi_j'
/// All indices are 1-based and run over 1..N. Order 0 gives empty tensors.
class BasisTensors {
 public:
  BasisTensors() = default;

  int order() const noexcept { return order_; }

  double A(int i, int j, int k) const { return a_[index3(i, j, k)]; }
  double B(int i, int j, int k) const { return b_[index3(i, j, k)]; }
  double C(int i, int j) const { return c_[index2(i, j)]; }

 private:
  friend BasisTensors build_tensors(int order);

  std::size_t index3(int i, int j, int k) const {
    const auto n = static_cast<std::size_t>(order_);
    return ((static_cast<std::size_t>(i - 1) * n) + static_cast<std::size_t>(j - 1)) * n +
           static_cast<std::size_t>(k - 1);
  }
  std::size_t index2(int i, int j) const {
    return static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(order_) +
           static_cast<std::size_t>(j - 1);
  }

  int order_ = 0;
  std::vector<double> a_;
  std::vector<double> b_;
  std::vector<double> c_;
};

/// A and B use a Gauss rule of ceil((3N+2)/2) nodes, which integrates every
/// integrand exactly; C uses its closed form.
BasisTensors build_tensors(int order);

/// Shared, lazily built tensors for `order`. Thread-safe; the returned
/// reference stays valid for the lifetime of the program.
const BasisTensors& cached_tensors(int order);

/// Expansion coefficients of one horizontal velocity component:
/// u(zeta) = mean + sum_j alphas[j-1] * phi_j(zeta).
struct MomentCoefficients {
  double mean = 0.0;
  std::vector<double> alphas;

  int order() const noexcept { return static_cast<int>(alphas.size()); }
};

/// L2 projection of a profile u(zeta) onto span{phi_0..phi_N}:
/// mean = int u, alphas[j-1] = (2j+1) int u phi_j.
MomentCoefficients project_profile(const std::function<double(double)>& profile, int order);

/// Projection of sampled data. The integrals use the composite trapezoid rule
/// on the given nodes; when the nodes are uniform and odd in number the
/// result is Richardson-extrapolated against the every-other-node rule.
struct TabulatedProjection {
  MomentCoefficients coefficients;
  /// Richardson estimate of the quadrature error (max over coefficients).
  double error_estimate = 0.0;

  static constexpr double tolerance = 1e-10;
  bool within_tolerance() const noexcept { return error_estimate <= tolerance; }
};

/// `zeta` must be strictly increasing with zeta.front() == 0 and
/// zeta.back() == 1 and hold at least two nodes. Throws InputError otherwise.
TabulatedProjection project_tabulated(std::span<const double> zeta, std::span<const double> values,
                                      int order);

/// u_m + sum_j alpha_j phi_j(zeta).
double reconstruct_velocity(const MomentCoefficients& coeffs, double zeta);

}  // namespace swme
