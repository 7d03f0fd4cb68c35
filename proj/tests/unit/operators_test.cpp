#include "xyzglass/operators.hpp"

#include <random>

#include <gtest/gtest.h>

using namespace xyzglass;

namespace {

const Complex I(0.0, 1.0);

std::vector<int> random_subset(std::mt19937& rng, int n) {
  std::vector<int> s;
  for (int i = 0; i < n; ++i) {
    if (rng() & 1U) s.push_back(i);
  }
  return s;
}

}  // namespace

TEST(Pauli, SingleSiteMatrices) {
  const auto z = pauli_site(1, 0, Axis::z).matrix();
  EXPECT_EQ(z(0, 0), Complex(1));
  EXPECT_EQ(z(1, 1), Complex(-1));
  EXPECT_EQ(z(0, 1), Complex(0));

  const auto x = global_flip(1, Axis::x).matrix();
  EXPECT_EQ(x(0, 1), Complex(1));
  EXPECT_EQ(x(1, 0), Complex(1));
  EXPECT_EQ(x(0, 0), Complex(0));

  const auto y = pauli_site(1, 0, Axis::y).matrix();
  EXPECT_EQ(y(0, 1), -I);
  EXPECT_EQ(y(1, 0), I);

  EXPECT_LT(max_norm(x * y - I * z), 1e-15);
}

TEST(Pauli, TensorSlotOrderMatchesKronecker) {
  // site 0 is the most significant factor: sigma_0^x = X (x) 1
  const auto x0 = pauli_site(2, 0, Axis::x).matrix();
  EXPECT_EQ(x0(2, 0), Complex(1));
  EXPECT_EQ(x0(1, 0), Complex(0));
  const auto zz = pauli_product(2, {0, 1}, Axis::z).matrix();
  EXPECT_EQ(zz.diagonal(), (Eigen::Vector4cd(1, -1, -1, 1)));
}

TEST(Pauli, EmptyProductIsIdentity) {
  const auto id = pauli_product(3, std::vector<int>{}, Axis::y);
  EXPECT_LT(max_norm(id.matrix() - ComplexMatrix::Identity(8, 8)), 1e-15);
}

TEST(Pauli, CommutationRelationsAndInvolution) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const int dim = 1 << n;
    for (int k = 0; k < n; ++k) {
      for (int j = 0; j < n; ++j) {
        for (Axis a : kAxes) {
          const Axis b = static_cast<Axis>((index(a) + 1) % 3);
          const Axis c = static_cast<Axis>((index(a) + 2) % 3);
          // [sigma_k^a, sigma_j^b] = 2i delta_kj sigma_j^c for cyclic (a, b, c)
          const auto lhs = commutator(pauli_site(n, k, a), pauli_site(n, j, b)).matrix();
          const ComplexMatrix rhs = k == j ? ComplexMatrix(2.0 * I * pauli_site(n, j, c).matrix())
                                           : ComplexMatrix::Zero(dim, dim);
          EXPECT_LT(max_norm(lhs - rhs), 1e-12);
        }
      }
      for (Axis a : kAxes) {
        const auto s = pauli_site(n, k, a).matrix();
        EXPECT_LT(max_norm(s * s - ComplexMatrix::Identity(dim, dim)), 1e-12);
      }
    }
  }
}

TEST(Pauli, ProductSquaresToIdentity) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const auto x = random_subset(rng, n);
    const auto s = pauli_product(n, x, kAxes[rng() % 3]).matrix();
    EXPECT_LT(max_norm(s * s - ComplexMatrix::Identity(1 << n, 1 << n)), 1e-12);
  }
}

TEST(Pauli, IndexOutOfRange) {
  EXPECT_THROW(pauli_site(2, 2, Axis::x), ConfigError);
  EXPECT_THROW(pauli_site(2, -1, Axis::x), ConfigError);
  EXPECT_THROW(pauli_site(15, 0, Axis::x), CapacityError);
}

TEST(Gauge, TrivialAndFullFlip) {
  const auto id = gauge_unitary(3, Axis::x, SpinConfiguration::all_up(3));
  EXPECT_LT(max_norm(id.matrix() - ComplexMatrix::Identity(8, 8)), 1e-15);
  const auto full = gauge_unitary(3, Axis::x, SpinConfiguration({-1, -1, -1}));
  EXPECT_LT(max_norm(full - global_flip(3, Axis::x)), 1e-15);
  EXPECT_THROW(gauge_unitary(3, Axis::x, SpinConfiguration({1, 1})), ConfigError);
}

TEST(Gauge, ConjugationFlipsTransverseSpins) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const auto tau = SpinConfiguration::from_bits(n, rng());
    for (Axis u : kAxes) {
      const auto U = gauge_unitary(n, u, tau).matrix();
      EXPECT_LT(max_norm(U * U.adjoint() - ComplexMatrix::Identity(1 << n, 1 << n)), 1e-12);
      for (int i = 0; i < n; ++i) {
        for (Axis w : kAxes) {
          const auto s = pauli_site(n, i, w).matrix();
          const double sign = (w == u) ? 1.0 : tau[i];
          EXPECT_LT(max_norm(U * s * U.adjoint() - sign * s), 1e-12);
        }
      }
    }
  }
}

TEST(GlobalFlip, CommutesWithSameAxisAnticommutesOtherwise) {
  std::mt19937 rng(5);
  for (Axis w : kAxes) {
    const auto f = global_flip(3, w);
    for (int t = 0; t < 10; ++t) {
      const auto x = random_subset(rng, 3);
      EXPECT_LT(max_norm(commutator(f, pauli_product(3, x, w))), 1e-12);
    }
    const auto f1 = global_flip(1, w).matrix();
    for (Axis v : kAxes) {
      if (v == w) continue;
      const auto s = pauli_site(1, 0, v).matrix();
      EXPECT_LT(max_norm(f1 * s + s * f1), 1e-12);
    }
  }
}

TEST(SpinConfiguration, RejectsNonSpinValues) {
  EXPECT_THROW(SpinConfiguration({1, 0}), ConfigError);
  const SpinConfiguration t({1, -1, -1});
  EXPECT_EQ(t.product(std::vector<int>{1, 2}), 1);
  EXPECT_EQ(t.product(std::vector<int>{0, 1}), -1);
}
