#include "swme/model.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "swme/errors.hpp"

namespace swme {
namespace {

Direction other(Direction d) { return d == Direction::x ? Direction::y : Direction::x; }

void require_finite(const MomentState& state) {
  if (!state.is_finite()) throw EvaluationError("non-finite entry in moment state");
}

void require_wet(const MomentState& state) {
  if (!(state.h() >= kHeightFloor)) {
    throw DegenerateStateError("water height " + std::to_string(state.h()) + " below floor");
  }
}

void require_order(const MomentState& state, const BasisTensors& tensors) {
  if (tensors.order() != state.order()) {
    throw ConfigError("basis tensors of order " + std::to_string(tensors.order()) +
                      " used with a state of order " + std::to_string(state.order()));
  }
}

// Moment coefficients with every entry beyond the first zeroed (the HSWME
// linearisation of the system matrix).
std::vector<double> truncated_coefficients(const MomentState& state, Direction d) {
  std::vector<double> c(static_cast<std::size_t>(state.order()) + 1, 0.0);
  if (state.order() >= 1) c[1] = state.coefficient(d, 1);
  return c;
}

}  // namespace

void ModelSpec::validate() const {
  auto finite = [](double v) { return std::isfinite(v); };
  if (order < 0) throw ConfigError("order must be >= 0");
  if (!finite(G) || G <= 0.0) throw ConfigError("G must be finite and positive");
  if (!finite(eps) || eps <= 0.0) throw ConfigError("eps must be finite and positive");
  if (!finite(gamma) || gamma < 0.0) throw ConfigError("gamma must be finite and non-negative");
  if (!finite(re0inv) || re0inv <= 0.0) throw ConfigError("re0inv must be finite and positive");
}

std::string_view to_string(Family family) {
  return family == Family::standard ? "standard" : "modified";
}

std::string_view to_string(Hyperbolicity h) {
  switch (h) {
    case Hyperbolicity::hyperbolic:
      return "hyperbolic";
    case Hyperbolicity::weakly_hyperbolic:
      return "weakly_hyperbolic";
    case Hyperbolicity::indeterminate:
      return "indeterminate";
  }
  return "unknown";
}

Eigen::MatrixXd system_matrix(const MomentState& state, const ModelSpec& spec, Direction dir,
                              const BasisTensors& tensors) {
  require_finite(state);
  require_order(state, tensors);
  if (!(state.h() > 0.0)) throw DegenerateStateError("system matrix needs h > 0");

  const StateLayout& L = state.layout();
  const int N = L.order();
  const int H = StateLayout::height;
  const int n_mom = L.momentum(dir);
  const double h = state.h();
  const double un = state.velocity(dir);
  const std::vector<double> an = truncated_coefficients(state, dir);

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(L.size(), L.size());
  A(H, n_mom) = 1.0;

  double an_sq = 0.0;
  for (int j = 1; j <= N; ++j) an_sq += an[j] * an[j] / (2.0 * j + 1.0);
  A(n_mom, H) = -un * un - an_sq + spec.G * h;
  A(n_mom, n_mom) = 2.0 * un;
  for (int j = 1; j <= N; ++j) A(n_mom, L.moment(dir, j)) = 2.0 * an[j] / (2.0 * j + 1.0);

  for (int i = 1; i <= N; ++i) {
    const int row = L.moment(dir, i);
    double quad = 0.0;
    for (int j = 1; j <= N; ++j) {
      for (int k = 1; k <= N; ++k) quad += tensors.A(i, j, k) * an[j] * an[k];
    }
    A(row, H) = -2.0 * un * an[i] - quad;
    A(row, n_mom) = 2.0 * an[i];
    for (int l = 1; l <= N; ++l) {
      double coupling = i == l ? un : 0.0;
      for (int k = 1; k <= N; ++k) coupling += (2.0 * tensors.A(i, l, k) + tensors.B(i, l, k)) * an[k];
      A(row, L.moment(dir, l)) = coupling;
    }
  }

  if (L.dims() == 2) {
    const Direction tdir = other(dir);
    const int t_mom = L.momentum(tdir);
    const double ut = state.velocity(tdir);
    const std::vector<double> at = truncated_coefficients(state, tdir);

    double cross = 0.0;
    for (int j = 1; j <= N; ++j) cross += an[j] * at[j] / (2.0 * j + 1.0);
    A(t_mom, H) = -un * ut - cross;
    A(t_mom, n_mom) = ut;
    A(t_mom, t_mom) = un;
    for (int j = 1; j <= N; ++j) {
      A(t_mom, L.moment(dir, j)) = at[j] / (2.0 * j + 1.0);
      A(t_mom, L.moment(tdir, j)) = an[j] / (2.0 * j + 1.0);
    }

    for (int i = 1; i <= N; ++i) {
      const int row = L.moment(tdir, i);
      double quad = 0.0;
      for (int j = 1; j <= N; ++j) {
        for (int k = 1; k <= N; ++k) quad += tensors.A(i, j, k) * an[j] * at[k];
      }
      A(row, H) = -(un * at[i] + ut * an[i]) - quad;
      A(row, n_mom) = at[i];
      A(row, t_mom) = an[i];
      for (int l = 1; l <= N; ++l) {
        double to_normal = 0.0;
        double to_tangential = i == l ? un : 0.0;
        for (int k = 1; k <= N; ++k) {
          to_normal += (tensors.A(i, l, k) + tensors.B(i, l, k)) * at[k];
          to_tangential += tensors.A(i, k, l) * an[k];
        }
        A(row, L.moment(dir, l)) = to_normal;
        A(row, L.moment(tdir, l)) = to_tangential;
      }
    }
  }
  return A;
}

Eigen::MatrixXd system_matrix(const MomentState& state, const ModelSpec& spec, Direction dir) {
  return system_matrix(state, spec, dir, cached_tensors(state.order()));
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> system_matrices(const MomentState& state,
                                                            const ModelSpec& spec) {
  const BasisTensors& tensors = cached_tensors(state.order());
  Eigen::MatrixXd a = system_matrix(state, spec, Direction::x, tensors);
  Eigen::MatrixXd b;
  if (state.dims() == 2) b = system_matrix(state, spec, Direction::y, tensors);
  return {std::move(a), std::move(b)};
}

double bar_gamma(const ModelSpec& spec, double h) {
  if (!(h > 0.0)) throw DomainError("bar_gamma needs h > 0, got " + std::to_string(h));
  return spec.gamma / (spec.eps + h * spec.gamma / (2.0 * spec.re0inv));
}

Eigen::MatrixXd relaxation_matrix(const ModelSpec& spec, const BasisTensors& tensors, double h) {
  if (!(h >= kHeightFloor)) throw DegenerateStateError("relaxation matrix needs h above floor");
  const int N = tensors.order();
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(N + 1, N + 1);
  const double viscous = spec.re0inv / (h * h);
  if (spec.family == Family::standard) {
    const double rate = spec.gamma / spec.eps / h;
    M.row(0).setConstant(rate);
    for (int i = 1; i <= N; ++i) {
      const double w = 2.0 * i + 1.0;
      M(i, 0) = w * rate;
      for (int j = 1; j <= N; ++j) M(i, j) = w * (rate + viscous * tensors.C(i, j));
    }
  } else {
    const double rate = bar_gamma(spec, h) / h;
    M(0, 0) = rate;
    for (int i = 1; i <= N; ++i) {
      const double w = 2.0 * i + 1.0;
      M(i, 0) = w * rate;
      for (int j = 1; j <= N; ++j) M(i, j) = w * viscous * tensors.C(i, j);
    }
  }
  return M;
}

Eigen::VectorXd source_standard(const MomentState& state, const ModelSpec& spec,
                                const BasisTensors& tensors, BottomSlope slope) {
  require_finite(state);
  require_wet(state);
  require_order(state, tensors);
  const StateLayout& L = state.layout();
  const int N = L.order();
  const double h = state.h();
  const double g_eps = spec.gamma / spec.eps;

  Eigen::VectorXd S = Eigen::VectorXd::Zero(L.size());
  for (int d = 0; d < L.dims(); ++d) {
    const auto dir = static_cast<Direction>(d);
    const double u = state.velocity(dir);
    double bottom = u;
    for (int j = 1; j <= N; ++j) bottom += state.coefficient(dir, j);
    S[L.momentum(dir)] = -g_eps * bottom - spec.G * h * slope[static_cast<std::size_t>(d)];
    for (int i = 1; i <= N; ++i) {
      double viscous = 0.0;
      for (int j = 1; j <= N; ++j) viscous += tensors.C(i, j) * state.coefficient(dir, j);
      S[L.moment(dir, i)] = -(2.0 * i + 1.0) * (g_eps * bottom + spec.re0inv / h * viscous);
    }
  }
  return S;
}

Eigen::VectorXd source_modified(const MomentState& state, const ModelSpec& spec,
                                const BasisTensors& tensors, BottomSlope slope) {
  require_finite(state);
  require_wet(state);
  require_order(state, tensors);
  const StateLayout& L = state.layout();
  const int N = L.order();
  const double h = state.h();
  const double gb = bar_gamma(spec, h);

  Eigen::VectorXd S = Eigen::VectorXd::Zero(L.size());
  for (int d = 0; d < L.dims(); ++d) {
    const auto dir = static_cast<Direction>(d);
    const double u = state.velocity(dir);
    S[L.momentum(dir)] = -gb * u - spec.G * h * slope[static_cast<std::size_t>(d)];
    for (int i = 1; i <= N; ++i) {
      double viscous = 0.0;
      for (int j = 1; j <= N; ++j) viscous += tensors.C(i, j) * state.coefficient(dir, j);
      S[L.moment(dir, i)] = -(2.0 * i + 1.0) * (gb * u + spec.re0inv / h * viscous);
    }
  }
  return S;
}

Eigen::VectorXd source(const MomentState& state, const ModelSpec& spec, const BasisTensors& tensors,
                       BottomSlope slope) {
  return spec.family == Family::standard ? source_standard(state, spec, tensors, slope)
                                         : source_modified(state, spec, tensors, slope);
}

double wave_speed_bound(const MomentState& state, const ModelSpec& spec, Direction dir) {
  const double un = state.velocity(dir);
  const double a1 = state.order() >= 1 ? state.coefficient(dir, 1) : 0.0;
  return std::abs(un) + std::sqrt(spec.G * state.h() + a1 * a1) + std::abs(a1);
}

WaveSpeed max_wave_speed(const MomentState& state, const ModelSpec& spec, Direction dir,
                         const BasisTensors& tensors) {
  const Eigen::MatrixXd A = system_matrix(state, spec, dir, tensors);
  if (A.rows() == 2) {
    // 1D SWE: u +- sqrt(G h) in closed form.
    const double un = state.velocity(dir);
    return {std::abs(un) + std::sqrt(spec.G * state.h()), false};
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(A, false);
  if (solver.info() != Eigen::Success || !solver.eigenvalues().allFinite()) {
    return {wave_speed_bound(state, spec, dir), true};
  }
  return {solver.eigenvalues().cwiseAbs().maxCoeff(), false};
}

WaveSpeed max_wave_speed(const MomentState& state, const ModelSpec& spec, Direction dir) {
  return max_wave_speed(state, spec, dir, cached_tensors(state.order()));
}

Hyperbolicity classify_matrix(const Eigen::MatrixXd& matrix, const HyperbolicityTolerances& tol) {
  if (matrix.rows() != matrix.cols() || matrix.rows() == 0 || !matrix.allFinite()) {
    return Hyperbolicity::indeterminate;
  }
  const auto n = static_cast<int>(matrix.rows());
  const double scale = 1.0 + matrix.cwiseAbs().rowwise().sum().maxCoeff();

  Eigen::EigenSolver<Eigen::MatrixXd> solver(matrix, true);
  if (solver.info() != Eigen::Success) return Hyperbolicity::indeterminate;
  const Eigen::VectorXcd lambda = solver.eigenvalues();

  // Single-linkage clustering of nearly equal eigenvalues.
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[static_cast<std::size_t>(a)] != a) a = parent[static_cast<std::size_t>(a)];
    return a;
  };
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (std::abs(lambda[a] - lambda[b]) <= tol.cluster * scale) {
        parent[static_cast<std::size_t>(find(b))] = find(a);
      }
    }
  }

  bool repeated = false;
  bool defective = false;
  for (int root = 0; root < n; ++root) {
    if (find(root) != root) continue;
    std::complex<double> mean = 0.0;
    int count = 0;
    for (int a = 0; a < n; ++a) {
      if (find(a) == root) {
        mean += lambda[a];
        ++count;
      }
    }
    mean /= static_cast<double>(count);
    if (std::abs(mean.imag()) > tol.imaginary * scale) return Hyperbolicity::indeterminate;
    if (count == 1) continue;
    repeated = true;
    // Geometric multiplicity from the numerical nullity of (M - lambda I).
    const Eigen::MatrixXd shifted = matrix - mean.real() * Eigen::MatrixXd::Identity(n, n);
    const Eigen::VectorXd sigma = Eigen::JacobiSVD<Eigen::MatrixXd>(shifted).singularValues();
    const int nullity = static_cast<int>((sigma.array() <= scale / tol.condition).count());
    if (nullity < count) defective = true;
  }
  if (defective) return Hyperbolicity::weakly_hyperbolic;

  if (!repeated) {
    const Eigen::VectorXd sigma = Eigen::JacobiSVD<Eigen::MatrixXcd>(solver.eigenvectors()).singularValues();
    const double smallest = sigma[sigma.size() - 1];
    if (!(smallest > 0.0) || sigma[0] / smallest >= tol.condition) return Hyperbolicity::weakly_hyperbolic;
  }
  return Hyperbolicity::hyperbolic;
}

Hyperbolicity classify_hyperbolicity(const MomentState& state, const ModelSpec& spec,
                                     const HyperbolicityTolerances& tol) {
  try {
    return classify_matrix(system_matrix(state, spec, Direction::x), tol);
  } catch (const Error&) {
    return Hyperbolicity::indeterminate;
  }
}

}  // namespace swme
