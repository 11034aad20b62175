#pragma once

// Quasilinear system matrices, friction sources and spectral diagnostics of
// the (modified) hyperbolic shallow water moment equations.

#include <array>
#include <functional>
#include <string_view>
#include <utility>

#include <Eigen/Core>

#include "swme/basis.hpp"
#include "swme/state.hpp"

namespace swme {

/// standard: SWE / HSWME friction (gamma / eps). modified: MSWE / MHSWME
/// friction through the regularised coefficient bar_gamma.
enum class Family { standard, modified };

/// swe for N = 0, hswme for N >= 1.
enum class Closure { swe, hswme };

/// Heights below this are treated as dry and floored by the solver.
inline constexpr double kHeightFloor = 1e-8;

struct ModelSpec {
  Family family = Family::standard;
  int order = 0;
  double G = 1.5e-3;       ///< g H / U^2
  double eps = 0.015;      ///< H / L
  double gamma = 0.0;      ///< kappa / (rho U)
  double re0inv = 4.444e-7;  ///< nu / (eps U H)
  /// Bottom elevation h_b(x, y) in dimensionless coordinates; empty is flat.
  std::function<double(double, double)> bottom;

  Closure closure() const noexcept { return order == 0 ? Closure::swe : Closure::hswme; }
  /// Throws ConfigError on non-finite or out-of-range parameters.
  void validate() const;
};

std::string_view to_string(Family family);

/// A_H (x) or B_H (y) evaluated at the state with alpha_i, beta_i (i >= 2)
/// set to zero. The same matrices serve both families. Throws
/// EvaluationError on non-finite input.
Eigen::MatrixXd system_matrix(const MomentState& state, const ModelSpec& spec, Direction dir,
                              const BasisTensors& tensors);
Eigen::MatrixXd system_matrix(const MomentState& state, const ModelSpec& spec, Direction dir);

/// (A_H, B_H); B_H is empty for 1D states.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> system_matrices(const MomentState& state,
                                                            const ModelSpec& spec);

/// gamma / (eps + h gamma / (2 Re0^-1)). Throws DomainError for h <= 0.
double bar_gamma(const ModelSpec& spec, double h);

/// Relaxation matrix M(h) of one velocity component, acting on
/// q = (h u_m, h alpha_1, ..., h alpha_N) so that the friction source of
/// that component equals -M q. Depends on the family.
Eigen::MatrixXd relaxation_matrix(const ModelSpec& spec, const BasisTensors& tensors, double h);

/// Slopes (d h_b / dx, d h_b / dy).
using BottomSlope = std::array<double, 2>;

/// S_SWME: -(gamma/eps)(u_m + sum alpha_j) on the momenta and
/// -(2i+1)(gamma/eps)(u_m + sum_j (1 + eps Re0^-1 C_ij / (h gamma)) alpha_j)
/// on the moments, plus -G h grad h_b on the momenta.
Eigen::VectorXd source_standard(const MomentState& state, const ModelSpec& spec,
                                const BasisTensors& tensors, BottomSlope slope = {0.0, 0.0});

/// S_MSWME: -bar_gamma u_m on the momenta and
/// -(2i+1)(bar_gamma u_m + Re0^-1 / h sum_j C_ij alpha_j) on the moments,
/// plus -G h grad h_b on the momenta.
Eigen::VectorXd source_modified(const MomentState& state, const ModelSpec& spec,
                                const BasisTensors& tensors, BottomSlope slope = {0.0, 0.0});

/// Dispatches on spec.family.
Eigen::VectorXd source(const MomentState& state, const ModelSpec& spec, const BasisTensors& tensors,
                       BottomSlope slope = {0.0, 0.0});

struct WaveSpeed {
  double value = 0.0;
  /// True when the eigensolver failed and the analytic bound was used.
  bool degraded = false;
};

/// Spectral radius of the directional system matrix.
WaveSpeed max_wave_speed(const MomentState& state, const ModelSpec& spec, Direction dir,
                         const BasisTensors& tensors);
WaveSpeed max_wave_speed(const MomentState& state, const ModelSpec& spec, Direction dir);

/// Fallback |u_n| + sqrt(G h + alpha_1^2) + |alpha_1|.
double wave_speed_bound(const MomentState& state, const ModelSpec& spec, Direction dir);

enum class Hyperbolicity { hyperbolic, weakly_hyperbolic, indeterminate };

std::string_view to_string(Hyperbolicity h);

struct HyperbolicityTolerances {
  /// Eigenvalues count as real when |Im| <= imaginary * scale.
  double imaginary = 1e-9;
  /// Eigenvector bases with condition number above this are defective; the
  /// same cutoff sets the relative rank tolerance 1 / condition.
  double condition = 1e8;
  /// Eigenvalues closer than cluster * scale are treated as one repeated
  /// eigenvalue.
  double cluster = 1e-6;
};

/// Spectral classification of a real square matrix. scale = 1 + ||M||_inf.
Hyperbolicity classify_matrix(const Eigen::MatrixXd& matrix, const HyperbolicityTolerances& tol = {});

/// Classification of A_H at the state (the x-direction system matrix).
/// For N >= 1: hyperbolic if alpha_1 != 0 or alpha_1 = beta_1 = 0, weakly
/// hyperbolic if alpha_1 = 0 and beta_1 != 0.
Hyperbolicity classify_hyperbolicity(const MomentState& state, const ModelSpec& spec,
                                     const HyperbolicityTolerances& tol = {});

}  // namespace swme
