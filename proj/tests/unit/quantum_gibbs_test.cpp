#include "xyzglass/quantum_gibbs.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "models.hpp"
#include "oracles.hpp"

using namespace xyzglass;
using xyzglass::testing::chain_model;
using xyzglass::testing::random_chain;
using xyzglass::testing::term;

namespace {

DenseOperator random_pauli_sum(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  ComplexMatrix m = ComplexMatrix::Zero(1 << n, 1 << n);
  for (int k = 0; k < 4; ++k) add_pauli_string(m, rng() & ((1U << n) - 1), kAxes[rng() % 3], g(rng));
  return DenseOperator(n, m, true);
}

}  // namespace

TEST(Hamiltonian, SingleSiteField) {
  const auto m = chain_model(1, {term(1, {0.5, -0.25, 2.0}, {0, 0, 0})});
  const auto h = build_hamiltonian(m, mean_sample(m)).matrix();
  const Complex I(0, 1);
  ComplexMatrix expect(2, 2);
  expect << -2.0, -0.5 - 0.25 * I, -0.5 + 0.25 * I, 2.0;
  EXPECT_LT(max_norm(h - expect), 1e-15);
}

TEST(Hamiltonian, CapAndShapeErrors) {
  const auto big = chain_model(15, {term(1, {1, 0, 0}, {0, 0, 0})});
  EXPECT_THROW(build_hamiltonian(big, mean_sample(big)), CapacityError);
  const auto m = chain_model(2, {term(1, {1, 0, 0}, {0, 0, 0})});
  DisorderSample bad;
  EXPECT_THROW(build_hamiltonian(m, bad), ConfigError);
}

TEST(Spectrum, ReconstructsAndRejectsNonHermitian) {
  std::mt19937_64 rng(4);
  const auto m = random_chain(rng, 3, {1, 2});
  const auto h = build_hamiltonian(m, sample_disorder(m, 1, 0));
  const auto s = spectral_decompose(h);
  const ComplexMatrix rec = s.vectors * s.energies.cast<Complex>().asDiagonal() * s.vectors.adjoint();
  EXPECT_LT(max_norm(rec - h.matrix()), 1e-12);
  for (Eigen::Index k = 1; k < s.dim(); ++k) EXPECT_LE(s.energies[k - 1], s.energies[k]);

  ComplexMatrix nh = ComplexMatrix::Zero(2, 2);
  nh(0, 1) = 1.0;
  EXPECT_THROW(spectral_decompose(DenseOperator(1, nh, false)), DomainError);
  EXPECT_THROW(DenseOperator(1, nh, true), DomainError);
}

TEST(Thermal, ExpectationMatchesMatrixExponential) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + trial % 3;
    const auto m = random_chain(rng, n, n > 1 ? std::vector<int>{1, 2} : std::vector<int>{1});
    const auto h = build_hamiltonian(m, sample_disorder(m, 2, trial));
    for (double beta : {0.0, 0.3, 1.7}) {
      const auto st = thermal_state(h, beta);
      const auto a = random_pauli_sum(rng, n);
      EXPECT_NEAR(gibbs_expectation(st, a), oracle::gibbs(h.matrix(), beta, a.matrix()), 1e-11);
      const ComplexMatrix rho = oracle::expm(-beta * h.matrix());
      EXPECT_NEAR(st.log_z(), std::log(rho.trace().real()), 1e-11);
    }
  }
}

TEST(Thermal, LargeBetaDoesNotOverflow) {
  const auto m = chain_model(2, {term(2, {1, 1, 1}, {0, 0, 0}), term(1, {0, 0, 0.3}, {0, 0, 0})});
  const auto st = thermal_state(m, mean_sample(m), 500.0);
  EXPECT_TRUE(std::isfinite(st.log_z()));
  EXPECT_NEAR(st.probabilities().sum(), 1.0, 1e-14);
  EXPECT_THROW(thermal_state(m, mean_sample(m), -1.0), DomainError);
  EXPECT_THROW(thermal_state(m, mean_sample(m), INFINITY), DomainError);
}

TEST(DuhamelKernel, Limits) {
  EXPECT_EQ(duhamel_kernel(0.0, 1.0, 3.0, 1e-9), 1.0);
  EXPECT_DOUBLE_EQ(duhamel_kernel(2.0, 0.5, 0.5, 1e-9), std::exp(-1.0));
  const double k = duhamel_kernel(1.0, 0.0, 2.0, 1e-9);
  EXPECT_NEAR(k, (1.0 - std::exp(-2.0)) / 2.0, 1e-15);
  EXPECT_NEAR(duhamel_kernel(1.0, 2.0, 0.0, 1e-9), k, 1e-16);
  // both branches agree with the midpoint value near the degeneracy threshold
  EXPECT_NEAR(duhamel_kernel(1.0, 1.0, 1.0 + 2e-9, 1e-9), std::exp(-1.0 - 1e-9), 1e-15);
  EXPECT_NEAR(duhamel_kernel(1.0, 1.0, 1.0 + 5e-10, 1e-9), std::exp(-1.0 - 2.5e-10), 1e-15);
}

TEST(Duhamel, MatchesSimpsonQuadrature) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 1 + trial % 3;
    const auto m = random_chain(rng, n, n > 1 ? std::vector<int>{1, 2} : std::vector<int>{1});
    const auto h = build_hamiltonian(m, sample_disorder(m, 3, trial));
    const double beta = 0.2 + 0.3 * (trial % 4);
    const auto st = thermal_state(h, beta);
    const auto a = random_pauli_sum(rng, n);
    const auto b = random_pauli_sum(rng, n);
    const double ref = oracle::duhamel_simpson(h.matrix(), beta, a.matrix(), b.matrix(), 400);
    EXPECT_NEAR(duhamel(st, a, b), ref, 1e-8);
    EXPECT_NEAR(duhamel(st, a, b), duhamel(st, b, a), 1e-12);
    EXPECT_NEAR(truncated_duhamel(st, a, b),
                ref - gibbs_expectation(st, a) * gibbs_expectation(st, b), 1e-8);
  }
}

TEST(Duhamel, ReducesToGibbsForCommutingOperators) {
  const auto m = chain_model(3, {term(2, {0, 0, 0.7}, {0, 0, 0}), term(1, {0, 0, -0.2}, {0, 0, 0})});
  const auto st = thermal_state(m, mean_sample(m), 1.3);
  const auto a = pauli_product(3, {0, 1}, Axis::z);
  const auto b = pauli_site(3, 2, Axis::z);
  EXPECT_NEAR(duhamel(st, a, b), gibbs_expectation(st, a * b), 1e-13);
  // at beta = 0 the inner product is the normalized trace
  const auto st0 = thermal_state(m, mean_sample(m), 0.0);
  const auto x = pauli_site(3, 0, Axis::x);
  EXPECT_NEAR(duhamel(st0, x, x), 1.0, 1e-14);
  EXPECT_NEAR(truncated_duhamel(st0, x, pauli_site(3, 1, Axis::x)), 0.0, 1e-14);
}

TEST(Duhamel, DegenerateSpectrum) {
  // sigma^z_0 sigma^z_1 has two doubly degenerate levels
  const auto m = chain_model(2, {term(2, {0, 0, 1.0}, {0, 0, 0})});
  const auto h = build_hamiltonian(m, mean_sample(m));
  const auto st = thermal_state(h, 0.8);
  const auto x0 = pauli_site(2, 0, Axis::x);
  const auto x1 = pauli_site(2, 1, Axis::x);
  EXPECT_NEAR(duhamel(st, x0, x0), oracle::duhamel_simpson(h.matrix(), 0.8, x0.matrix(), x0.matrix(), 400), 1e-9);
  EXPECT_NEAR(duhamel(st, x0, x1), oracle::duhamel_simpson(h.matrix(), 0.8, x0.matrix(), x1.matrix(), 400), 1e-9);
}

TEST(DerivativeIdentity, FieldResponse) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    const auto m = random_chain(rng, 2, {1, 2});
    const auto smp = sample_disorder(m, 4, trial);
    const Axis w = kAxes[trial % 3];
    const auto f = random_pauli_sum(rng, 2);
    EXPECT_LT(derivative_identity_residual(m, smp, 0.9, f, w, 1e-4), 1e-6);
  }
  const auto nofield = chain_model(2, {term(2, {1, 0, 0}, {0, 0, 0})});
  EXPECT_THROW(derivative_identity_residual(nofield, mean_sample(nofield), 1.0, pauli_site(2, 0, Axis::z),
                                            Axis::z, 1e-4),
               ConfigError);
  EXPECT_THROW(derivative_identity_residual(nofield, mean_sample(nofield), 1.0, pauli_site(2, 0, Axis::z),
                                            Axis::z, 0.0),
               DomainError);
}

TEST(Observables, OrderAndFreeEnergy) {
  const auto m = chain_model(2, {term(1, {0, 0, 1.0}, {0, 0, 0})});
  const auto st = thermal_state(m, mean_sample(m), 0.5);
  EXPECT_NEAR(order_expectation(st, Axis::z), std::tanh(0.5), 1e-14);
  EXPECT_NEAR(order_expectation(st, Axis::x), 0.0, 1e-14);
  EXPECT_NEAR(free_energy_density(st, 2), std::log(2.0 * std::cosh(0.5)), 1e-14);
  EXPECT_THROW(free_energy_density(st, 0), ConfigError);
}

TEST(Z2, CommutatorVanishesOnlyWithSymmetry) {
  std::mt19937_64 rng(2);
  const auto sym = chain_model(3, {term(1, {0, 0, 0.8}, {0, 0, 1}), term(2, {0.3, 0.5, 0.2}, {1, 1, 1})});
  ASSERT_TRUE(z2_symmetric_in_law(sym.params, Axis::z));
  EXPECT_LT(z2_commutator_norm(build_hamiltonian(sym, sample_disorder(sym, 1, 0)), Axis::z), 1e-12);
  EXPECT_GT(z2_commutator_norm(build_hamiltonian(sym, sample_disorder(sym, 1, 0)), Axis::x), 1e-3);
}
