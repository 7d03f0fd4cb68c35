#include "xyzglass/quadrature.hpp"

#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "models.hpp"

using namespace xyzglass;
using xyzglass::testing::chain_model;
using xyzglass::testing::term;

namespace {

double moment(const GaussHermiteRule& r, int k) {
  double acc = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) acc += r.weights[i] * std::pow(r.nodes[i], k);
  return acc;
}

/// Size of the terms summed in moment(); odd moments cancel down from it.
double abs_moment(const GaussHermiteRule& r, int k) {
  double acc = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) acc += r.weights[i] * std::pow(std::abs(r.nodes[i]), k);
  return acc;
}

double double_factorial(int k) {
  double v = 1.0;
  for (int j = k; j > 1; j -= 2) v *= j;
  return v;
}

}  // namespace

TEST(GaussHermite, SmallRulesInClosedForm) {
  const auto r2 = gauss_hermite_rule(2);
  EXPECT_NEAR(r2.nodes[0], -1.0, 1e-15);
  EXPECT_NEAR(r2.nodes[1], 1.0, 1e-15);
  EXPECT_NEAR(r2.weights[0], 0.5, 1e-15);
  const auto r3 = gauss_hermite_rule(3);
  EXPECT_NEAR(r3.nodes[0], -std::sqrt(3.0), 1e-14);
  EXPECT_NEAR(r3.nodes[1], 0.0, 1e-15);
  EXPECT_NEAR(r3.weights[1], 2.0 / 3.0, 1e-14);
  EXPECT_NEAR(r3.weights[2], 1.0 / 6.0, 1e-14);
}

TEST(GaussHermite, ExactForPolynomialsUpToDegree2nMinus1) {
  for (int n : {4, 8, 16, 24, 40}) {
    const auto r = gauss_hermite_rule(n);
    EXPECT_NEAR(std::accumulate(r.weights.begin(), r.weights.end(), 0.0), 1.0, 1e-14);
    for (int k = 1; k <= std::min(2 * n - 1, 20); ++k) {
      const double exact = (k % 2 == 1) ? 0.0 : double_factorial(k - 1);
      EXPECT_NEAR(moment(r, k), exact, 1e-12 * std::max(1.0, abs_moment(r, k))) << "n=" << n << " k=" << k;
    }
  }
  EXPECT_THROW(gauss_hermite_rule(0), DomainError);
}

TEST(GaussHermite, GaussianExpectation) {
  // E exp(aZ) = exp(a^2/2)
  const auto r = gauss_hermite_rule(24);
  double acc = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) acc += r.weights[i] * std::exp(0.7 * r.nodes[i]);
  EXPECT_NEAR(acc, std::exp(0.245), 1e-14);
}

TEST(Quadrature, SpecCoversRandomComponentsOnly) {
  const auto m = chain_model(2, {term(1, {0, 0, 0.5}, {0, 0, 1.0}), term(2, {0.2, 0.1, 0.1}, {0, 1, 1})});
  const auto spec = make_quadrature_spec(m, 5);
  EXPECT_EQ(spec.dims.size(), 4U);
  EXPECT_EQ(spec.total_nodes(), 625U);
  EXPECT_EQ(spec.base.couplings[1][0][0], 0.2);

  // E[J_1^z(site 0) * J_2^y] factorizes; E[(J_1^z)^2] = mu^2 + Delta^2
  const double prod = quadrature_average(spec, [](const DisorderSample& s) {
    return s.couplings[0][0][2] * s.couplings[1][0][1];
  });
  EXPECT_NEAR(prod, 0.05, 1e-14);
  const double sq = quadrature_average(spec, [](const DisorderSample& s) {
    return s.couplings[0][1][2] * s.couplings[0][1][2];
  });
  EXPECT_NEAR(sq, 1.25, 1e-13);
}

TEST(Quadrature, OdometerOrderAndWeights) {
  const auto m = chain_model(1, {term(1, {0, 1.0, 2.0}, {0, 1, 1})});
  const auto spec = make_quadrature_spec(m, 3);
  const auto rule = gauss_hermite_rule(3);
  std::vector<std::uint64_t> seen;
  double wsum = 0.0;
  for_each_node(spec, 0, spec.total_nodes(), [&](std::uint64_t k, double w, const DisorderSample& s) {
    seen.push_back(k);
    wsum += w;
    if (k == 1) {  // last dim fastest
      EXPECT_NEAR(s.couplings[0][0][1], 1.0 + rule.nodes[0], 1e-15);
      EXPECT_NEAR(s.couplings[0][0][2], 2.0 + rule.nodes[1], 1e-15);
      EXPECT_NEAR(w, rule.weights[0] * rule.weights[1], 1e-16);
    }
  });
  EXPECT_EQ(seen.size(), 9U);
  EXPECT_NEAR(wsum, 1.0, 1e-14);
}

TEST(Quadrature, NodeGuard) {
  std::vector<CouplingTerm> terms{term(1, {0, 0, 0}, {1, 1, 1}), term(2, {0, 0, 0}, {1, 1, 1})};
  const auto m = chain_model(4, terms);
  EXPECT_THROW(make_quadrature_spec(m, 16).total_nodes(), CapacityError);
  EXPECT_THROW(make_quadrature_spec(m, 1), DomainError);
}
