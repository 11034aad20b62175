#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "swme/basis.hpp"
#include "swme/errors.hpp"
#include "swme/oracle/quadrature.hpp"

using namespace swme;

TEST(LegendrePhi, SpecValues) {
  EXPECT_DOUBLE_EQ(legendre_phi(0, 0.37), 1.0);
  EXPECT_DOUBLE_EQ(legendre_phi(1, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(legendre_phi(1, 1.0), -1.0);
  EXPECT_DOUBLE_EQ(legendre_phi(2, 0.5), -0.5);
}

TEST(LegendrePhi, NormalisedAtBottomAndAlternatingAtTop) {
  for (int j = 0; j <= 8; ++j) {
    EXPECT_NEAR(legendre_phi(j, 0.0), 1.0, 1e-14) << j;
    EXPECT_NEAR(legendre_phi(j, 1.0), j % 2 == 0 ? 1.0 : -1.0, 1e-14) << j;
  }
}

TEST(LegendrePhi, MatchesMonomialExpansion) {
  for (int j = 0; j <= 6; ++j) {
    const auto p = oracle::phi(j);
    for (double z = 0.0; z <= 1.0; z += 0.05) {
      EXPECT_NEAR(legendre_phi(j, z), static_cast<double>(oracle::evaluate(p, z)), 1e-13) << j << " " << z;
    }
  }
}

TEST(LegendrePhi, DomainErrors) {
  EXPECT_THROW(legendre_phi(-1, 0.5), DomainError);
  EXPECT_THROW(legendre_phi(1, -1e-3), DomainError);
  EXPECT_THROW(legendre_phi(1, 1.0 + 1e-9), DomainError);
  EXPECT_THROW(legendre_phi(0, std::nan("")), DomainError);
}

TEST(LegendrePhi, Orthogonality) {
  for (int i = 0; i <= 6; ++i) {
    for (int j = 0; j <= 6; ++j) {
      const double v = static_cast<double>(oracle::integrate(
          [&](long double z) { return legendre_phi(i, static_cast<double>(z)) * legendre_phi(j, static_cast<double>(z)); }));
      EXPECT_NEAR(v, i == j ? 1.0 / (2 * i + 1) : 0.0, 1e-13) << i << " " << j;
    }
  }
}

TEST(LegendrePhi, DerivativeAndIntegralAgreeWithPolynomialCalculus) {
  for (int j = 0; j <= 6; ++j) {
    const auto d = oracle::derivative(oracle::phi(j));
    const auto a = oracle::antiderivative(oracle::phi(j));
    for (double z = 0.0; z <= 1.0; z += 0.1) {
      EXPECT_NEAR(legendre_phi_derivative(j, z), static_cast<double>(oracle::evaluate(d, z)), 1e-11);
      EXPECT_NEAR(legendre_phi_integral(j, z), static_cast<double>(oracle::evaluate(a, z)), 1e-14);
    }
  }
}

TEST(GaussLegendre, ExactForPolynomialsUpToDegree2nMinus1) {
  for (int n = 1; n <= 12; ++n) {
    const GaussRule rule = gauss_legendre(n);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double s = 0.0;
      for (std::size_t q = 0; q < rule.nodes.size(); ++q) s += rule.weights[q] * std::pow(rule.nodes[q], k);
      EXPECT_NEAR(s, 1.0 / (k + 1), 1e-14) << n << " " << k;
    }
  }
}

TEST(BasisTensors, PrintedValues) {
  const BasisTensors t = build_tensors(3);
  EXPECT_EQ(t.C(1, 1), 4.0);
  EXPECT_EQ(t.C(2, 2), 12.0);
  EXPECT_EQ(t.C(3, 3), 24.0);
  EXPECT_EQ(t.C(1, 3), 4.0);
  EXPECT_EQ(t.C(1, 2), 0.0);
  EXPECT_NEAR(t.A(1, 1, 1), 0.0, 1e-15);
  EXPECT_NEAR(t.A(1, 1, 2), 2.0 / 5.0, 1e-15);
  EXPECT_NEAR(t.A(2, 1, 1), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(t.A(2, 2, 2), 2.0 / 7.0, 1e-15);
  EXPECT_NEAR(t.A(1, 2, 3), 9.0 / 35.0, 1e-15);
  EXPECT_NEAR(t.A(3, 1, 2), 3.0 / 5.0, 1e-15);
  EXPECT_NEAR(t.B(1, 1, 2), 1.0 / 5.0, 1e-15);
  EXPECT_NEAR(t.B(1, 2, 1), -1.0 / 5.0, 1e-15);
  EXPECT_NEAR(t.B(2, 1, 1), -1.0, 1e-15);
  EXPECT_NEAR(t.B(2, 2, 2), -1.0 / 7.0, 1e-15);
  EXPECT_NEAR(t.B(3, 1, 2), -6.0 / 5.0, 1e-15);
  EXPECT_NEAR(t.B(3, 2, 1), -4.0 / 5.0, 1e-15);
}

TEST(BasisTensors, MatchBruteForceOracle) {
  for (int n = 1; n <= 4; ++n) {
    const BasisTensors t = build_tensors(n);
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        EXPECT_NEAR(t.C(i, j), oracle::tensor_C(i, j), 1e-12);
        for (int k = 1; k <= n; ++k) {
          EXPECT_NEAR(t.A(i, j, k), oracle::tensor_A(i, j, k), 1e-12);
          EXPECT_NEAR(t.B(i, j, k), oracle::tensor_B(i, j, k), 1e-12);
        }
      }
    }
  }
}

TEST(BasisTensors, Symmetries) {
  const BasisTensors t = build_tensors(4);
  for (int i = 1; i <= 4; ++i) {
    for (int j = 1; j <= 4; ++j) {
      EXPECT_EQ(t.C(i, j), t.C(j, i));
      for (int k = 1; k <= 4; ++k) {
        EXPECT_NEAR(t.A(i, j, k), t.A(i, k, j), 1e-15);
        // (2k+1) A_ijk = (2i+1) A_kji: both are (2i+1)(2k+1) int phi_i phi_j phi_k.
        EXPECT_NEAR((2 * k + 1) * t.A(i, j, k), (2 * i + 1) * t.A(k, j, i), 1e-13);
      }
    }
  }
}

TEST(BasisTensors, OrderZeroIsEmptyAndNegativeThrows) {
  EXPECT_EQ(build_tensors(0).order(), 0);
  EXPECT_THROW(build_tensors(-1), DomainError);
  EXPECT_EQ(&cached_tensors(2), &cached_tensors(2));
}

TEST(ProjectProfile, SpecExamples) {
  const MomentCoefficients c = project_profile([](double) { return 0.7; }, 3);
  EXPECT_NEAR(c.mean, 0.7, 1e-15);
  for (const double a : c.alphas) EXPECT_NEAR(a, 0.0, 1e-15);

  const double H = 1.5, U = 100.0, hhat = 1.0;
  const MomentCoefficients lin = project_profile([&](double z) { return H / (4 * U) * hhat * z; }, 2);
  EXPECT_NEAR(lin.mean, 1.875e-3, 1e-15);
  EXPECT_NEAR(lin.alphas[0], -1.875e-3, 1e-15);
  EXPECT_NEAR(lin.alphas[1], 0.0, 1e-15);

  const MomentCoefficients p2 = project_profile([](double z) { return legendre_phi(2, z); }, 2);
  EXPECT_NEAR(p2.mean, 0.0, 1e-14);
  EXPECT_NEAR(p2.alphas[0], 0.0, 1e-14);
  EXPECT_NEAR(p2.alphas[1], 1.0, 1e-14);
}

TEST(ProjectProfile, RoundTripOnRandomPolynomials) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int N = 1 + trial % 5;
    std::vector<double> coef(static_cast<std::size_t>(N) + 1);
    for (auto& c : coef) c = d(rng);
    auto poly = [&](double z) {
      double s = 0.0;
      for (auto it = coef.rbegin(); it != coef.rend(); ++it) s = s * z + *it;
      return s;
    };
    const MomentCoefficients m = project_profile(poly, N);
    for (int k = 0; k <= 100; ++k) {
      const double z = k / 100.0;
      EXPECT_NEAR(reconstruct_velocity(m, z), poly(z), 1e-12);
    }
  }
}

TEST(ProjectTabulated, LinearProfileIsExact) {
  std::vector<double> z, u;
  for (int k = 0; k <= 64; ++k) {
    z.push_back(k / 64.0);
    u.push_back(0.25 * 1.5 * z.back() / 100.0);
  }
  const TabulatedProjection p = project_tabulated(z, u, 1);
  EXPECT_TRUE(p.within_tolerance());
  EXPECT_NEAR(p.coefficients.mean, 1.875e-3, 1e-15);
  EXPECT_NEAR(p.coefficients.alphas[0], -1.875e-3, 1e-15);
}

TEST(ProjectTabulated, CoarseSmoothProfileReportsError) {
  std::vector<double> z, u;
  for (int k = 0; k <= 8; ++k) {
    z.push_back(k / 8.0);
    u.push_back(std::sin(3.0 * z.back()));
  }
  const TabulatedProjection p = project_tabulated(z, u, 2);
  EXPECT_FALSE(p.within_tolerance());
  EXPECT_NEAR(p.coefficients.mean, (1.0 - std::cos(3.0)) / 3.0, 1e-3);
}

TEST(ProjectTabulated, InputErrors) {
  const std::vector<double> good{0.0, 0.5, 1.0};
  const std::vector<double> vals{1.0, 1.0, 1.0};
  EXPECT_THROW(project_tabulated(std::vector<double>{}, std::vector<double>{}, 1), InputError);
  EXPECT_THROW(project_tabulated(std::vector<double>{0.0}, std::vector<double>{1.0}, 1), InputError);
  EXPECT_THROW(project_tabulated(good, std::vector<double>{1.0, 1.0}, 1), InputError);
  EXPECT_THROW(project_tabulated(std::vector<double>{0.0, 0.5, 0.9}, vals, 1), InputError);
  EXPECT_THROW(project_tabulated(std::vector<double>{0.0, 0.6, 0.5, 1.0}, std::vector<double>(4, 1.0), 1),
               InputError);
  EXPECT_THROW(project_tabulated(good, std::vector<double>{1.0, std::nan(""), 1.0}, 1), InputError);
}

TEST(ReconstructVelocity, SpecExamples) {
  EXPECT_DOUBLE_EQ(reconstruct_velocity({0.3, {}}, 0.42), 0.3);
  EXPECT_DOUBLE_EQ(reconstruct_velocity({0.3, {-0.1}}, 0.0), 0.2);
  EXPECT_THROW(reconstruct_velocity({0.3, {}}, 1.5), DomainError);
  EXPECT_THROW(reconstruct_velocity({0.3, {}}, -0.1), DomainError);
}
