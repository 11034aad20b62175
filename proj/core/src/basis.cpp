#include "swme/basis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "swme/errors.hpp"

namespace swme {
namespace {

void check_zeta(double zeta) {
  if (!(zeta >= 0.0 && zeta <= 1.0)) {
    throw DomainError("zeta must lie in [0, 1], got " + std::to_string(zeta));
  }
}

void check_degree(int j) {
  if (j < 0) throw DomainError("polynomial degree must be non-negative, got " + std::to_string(j));
}

// P_n(x) and P_n'(x) by the three-term recurrence.
struct LegendreValue {
  double p;
  double dp;
};

LegendreValue legendre(int n, double x) {
  double p_prev = 1.0;
  double p = x;
  double dp_prev = 0.0;
  double dp = 1.0;
  if (n == 0) return {1.0, 0.0};
  for (int k = 1; k < n; ++k) {
    const double p_next = ((2.0 * k + 1.0) * x * p - k * p_prev) / (k + 1.0);
    const double dp_next = dp_prev + (2.0 * k + 1.0) * p;
    p_prev = p;
    p = p_next;
    dp_prev = dp;
    dp = dp_next;
  }
  return {p, dp};
}

// Single 16-point rule reused for composite integration of arbitrary profiles.
constexpr int kPanelPoints = 16;
constexpr int kPanels = 8;

}  // namespace

double legendre_phi(int j, double zeta) {
  check_degree(j);
  check_zeta(zeta);
  return legendre(j, 1.0 - 2.0 * zeta).p;
}

double legendre_phi_derivative(int j, double zeta) {
  check_degree(j);
  check_zeta(zeta);
  return -2.0 * legendre(j, 1.0 - 2.0 * zeta).dp;
}

double legendre_phi_integral(int j, double zeta) {
  check_degree(j);
  check_zeta(zeta);
  if (j == 0) return zeta;
  // int P_j dx = (P_{j+1} - P_{j-1}) / (2j+1), and the bracket vanishes at x = 1.
  const double x = 1.0 - 2.0 * zeta;
  return (legendre(j - 1, x).p - legendre(j + 1, x).p) / (2.0 * (2.0 * j + 1.0));
}

GaussRule gauss_legendre(int points) {
  if (points < 1) throw DomainError("Gauss rule needs at least one point");
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(points));
  rule.weights.resize(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (points + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(points, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(points, x).dp;
    // Map from [-1, 1] to [0, 1].
    rule.nodes[static_cast<std::size_t>(i)] = 0.5 * (1.0 - x);
    rule.weights[static_cast<std::size_t>(i)] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

BasisTensors build_tensors(int order) {
  if (order < 0) throw DomainError("moment order must be non-negative");
  BasisTensors t;
  t.order_ = order;
  const auto n = static_cast<std::size_t>(order);
  t.a_.assign(n * n * n, 0.0);
  t.b_.assign(n * n * n, 0.0);
  t.c_.assign(n * n, 0.0);
  if (order == 0) return t;

  const GaussRule rule = gauss_legendre((3 * order + 3) / 2);
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const double z = rule.nodes[q];
    const double w = rule.weights[q];
    std::vector<double> phi(n + 1), dphi(n + 1), iphi(n + 1);
    for (int j = 1; j <= order; ++j) {
      phi[static_cast<std::size_t>(j)] = legendre_phi(j, z);
      dphi[static_cast<std::size_t>(j)] = legendre_phi_derivative(j, z);
      iphi[static_cast<std::size_t>(j)] = legendre_phi_integral(j, z);
    }
    for (int i = 1; i <= order; ++i) {
      const double wi = w * (2.0 * i + 1.0);
      for (int j = 1; j <= order; ++j) {
        for (int k = 1; k <= order; ++k) {
          const double pk = phi[static_cast<std::size_t>(k)];
          t.a_[t.index3(i, j, k)] += wi * phi[static_cast<std::size_t>(i)] * phi[static_cast<std::size_t>(j)] * pk;
          t.b_[t.index3(i, j, k)] += wi * dphi[static_cast<std::size_t>(i)] * iphi[static_cast<std::size_t>(j)] * pk;
        }
      }
    }
  }
  // Closed form, exact in floating point: 2 m (m + 1), m = min(i, j), for
  // i + j even and 0 otherwise.
  for (int i = 1; i <= order; ++i) {
    for (int j = 1; j <= order; ++j) {
      const int m = std::min(i, j);
      t.c_[t.index2(i, j)] = (i + j) % 2 == 0 ? 2.0 * m * (m + 1) : 0.0;
    }
  }
  return t;
}

const BasisTensors& cached_tensors(int order) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const BasisTensors>> cache;
  const std::lock_guard lock(mutex);
  auto& slot = cache[order];
  if (!slot) slot = std::make_unique<const BasisTensors>(build_tensors(order));
  return *slot;
}

MomentCoefficients project_profile(const std::function<double(double)>& profile, int order) {
  if (order < 0) throw DomainError("moment order must be non-negative");
  if (!profile) throw InputError("empty velocity profile");
  static const GaussRule rule = gauss_legendre(kPanelPoints);

  MomentCoefficients out;
  out.alphas.assign(static_cast<std::size_t>(order), 0.0);
  const double width = 1.0 / kPanels;
  for (int panel = 0; panel < kPanels; ++panel) {
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double z = (panel + rule.nodes[q]) * width;
      const double w = rule.weights[q] * width;
      const double u = profile(z);
      out.mean += w * u;
      for (int j = 1; j <= order; ++j) {
        out.alphas[static_cast<std::size_t>(j - 1)] += (2.0 * j + 1.0) * w * u * legendre_phi(j, z);
      }
    }
  }
  return out;
}

TabulatedProjection project_tabulated(std::span<const double> zeta, std::span<const double> values,
                                      int order) {
  if (order < 0) throw DomainError("moment order must be non-negative");
  if (zeta.size() != values.size()) throw InputError("profile tabulation: node/value count mismatch");
  if (zeta.size() < 2) throw InputError("profile tabulation needs at least two nodes");
  constexpr double kEnds = 1e-12;
  if (std::abs(zeta.front()) > kEnds || std::abs(zeta.back() - 1.0) > kEnds) {
    throw InputError("profile tabulation must span [0, 1]");
  }
  for (std::size_t k = 1; k < zeta.size(); ++k) {
    if (!(zeta[k] > zeta[k - 1])) throw InputError("profile tabulation nodes must be strictly increasing");
  }
  for (const double v : values) {
    if (!std::isfinite(v)) throw InputError("profile tabulation contains non-finite values");
  }

  const std::size_t n = zeta.size();
  auto weight = [&](int j, std::size_t k) {
    const double z = std::clamp(zeta[k], 0.0, 1.0);
    return j == 0 ? 1.0 : (2.0 * j + 1.0) * legendre_phi(j, z);
  };
  // Trapezoid over nodes [0, stride, 2*stride, ...].
  auto trapezoid = [&](int j, std::size_t stride) {
    double sum = 0.0;
    for (std::size_t k = stride; k < n; k += stride) {
      const std::size_t a = k - stride;
      sum += 0.5 * (zeta[k] - zeta[a]) * (values[a] * weight(j, a) + values[k] * weight(j, k));
    }
    return sum;
  };

  bool uniform = n >= 3 && n % 2 == 1;
  if (uniform) {
    const double h = (zeta.back() - zeta.front()) / static_cast<double>(n - 1);
    for (std::size_t k = 1; k < n && uniform; ++k) {
      uniform = std::abs((zeta[k] - zeta[k - 1]) - h) <= 1e-9 * h;
    }
  }

  TabulatedProjection result;
  result.coefficients.alphas.assign(static_cast<std::size_t>(order), 0.0);
  const bool halvable = n >= 3 && n % 2 == 1;
  const bool quarterable = n >= 5 && (n - 1) % 4 == 0;
  result.error_estimate = halvable ? 0.0 : std::numeric_limits<double>::infinity();
  for (int j = 0; j <= order; ++j) {
    const double fine = trapezoid(j, 1);
    double value = fine;
    if (halvable) {
      const double coarse = trapezoid(j, 2);
      double estimate = std::abs(fine - coarse) / 3.0;
      if (uniform) {
        value = fine + (fine - coarse) / 3.0;
        if (quarterable) {
          // Error of the extrapolated value from one more Romberg level.
          const double coarser = trapezoid(j, 4);
          const double previous = coarse + (coarse - coarser) / 3.0;
          estimate = std::abs(value - previous) / 15.0;
        }
      }
      result.error_estimate = std::max(result.error_estimate, estimate);
    }
    if (j == 0) {
      result.coefficients.mean = value;
    } else {
      result.coefficients.alphas[static_cast<std::size_t>(j - 1)] = value;
    }
  }
  return result;
}

double reconstruct_velocity(const MomentCoefficients& coeffs, double zeta) {
  check_zeta(zeta);
  double u = coeffs.mean;
  for (int j = 1; j <= coeffs.order(); ++j) {
    u += coeffs.alphas[static_cast<std::size_t>(j - 1)] * legendre_phi(j, zeta);
  }
  return u;
}

}  // namespace swme
