#pragma once

// Brute-force reference values for the basis tensors: the basis is expanded
// into explicit monomials and every integral is evaluated with adaptive
// Simpson quadrature. Shares no code with the production tensor builder.

#include <cmath>
#include <functional>
#include <vector>

namespace swme::oracle {

using Poly = std::vector<long double>;  // coefficient of zeta^k at index k

inline long double binomial(int n, int k) {
  long double r = 1.0L;
  for (int m = 1; m <= k; ++m) r = r * static_cast<long double>(n - k + m) / static_cast<long double>(m);
  return r;
}

/// P_j(1 - 2 zeta) = sum_k C(j,k) C(j+k,k) (-zeta)^k.
inline Poly phi(int j) {
  Poly p(static_cast<std::size_t>(j) + 1);
  for (int k = 0; k <= j; ++k) {
    p[static_cast<std::size_t>(k)] = binomial(j, k) * binomial(j + k, k) * (k % 2 == 0 ? 1.0L : -1.0L);
  }
  return p;
}

inline Poly derivative(const Poly& p) {
  if (p.size() <= 1) return {0.0L};
  Poly d(p.size() - 1);
  for (std::size_t k = 1; k < p.size(); ++k) d[k - 1] = static_cast<long double>(k) * p[k];
  return d;
}

inline Poly antiderivative(const Poly& p) {
  Poly a(p.size() + 1, 0.0L);
  for (std::size_t k = 0; k < p.size(); ++k) a[k + 1] = p[k] / static_cast<long double>(k + 1);
  return a;
}

inline long double evaluate(const Poly& p, long double x) {
  long double r = 0.0L;
  for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
  return r;
}

inline long double simpson(const std::function<long double(long double)>& f, long double a, long double b,
                           long double fa, long double fm, long double fb, long double whole, long double tol,
                           int depth) {
  const long double m = 0.5L * (a + b);
  const long double lm = 0.5L * (a + m);
  const long double rm = 0.5L * (m + b);
  const long double flm = f(lm);
  const long double frm = f(rm);
  const long double left = (m - a) / 6.0L * (fa + 4.0L * flm + fm);
  const long double right = (b - m) / 6.0L * (fm + 4.0L * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) <= 15.0L * tol) {
    return left + right + (left + right - whole) / 15.0L;
  }
  return simpson(f, a, m, fa, flm, fm, left, 0.5L * tol, depth - 1) +
         simpson(f, m, b, fm, frm, fb, right, 0.5L * tol, depth - 1);
}

/// Adaptive Simpson on [a, b].
inline long double integrate(const std::function<long double(long double)>& f, long double a = 0.0L,
                             long double b = 1.0L, long double tol = 1e-16L) {
  const long double fa = f(a);
  const long double fb = f(b);
  const long double fm = f(0.5L * (a + b));
  const long double whole = (b - a) / 6.0L * (fa + 4.0L * fm + fb);
  return simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

inline double tensor_A(int i, int j, int k) {
  const Poly pi = phi(i), pj = phi(j), pk = phi(k);
  const long double v =
      integrate([&](long double z) { return evaluate(pi, z) * evaluate(pj, z) * evaluate(pk, z); });
  return static_cast<double>((2 * i + 1) * v);
}

inline double tensor_B(int i, int j, int k) {
  const Poly di = derivative(phi(i)), ij = antiderivative(phi(j)), pk = phi(k);
  const long double v =
      integrate([&](long double z) { return evaluate(di, z) * evaluate(ij, z) * evaluate(pk, z); });
  return static_cast<double>((2 * i + 1) * v);
}

inline double tensor_C(int i, int j) {
  const Poly di = derivative(phi(i)), dj = derivative(phi(j));
  return static_cast<double>(integrate([&](long double z) { return evaluate(di, z) * evaluate(dj, z); }));
}

}  // namespace swme::oracle
