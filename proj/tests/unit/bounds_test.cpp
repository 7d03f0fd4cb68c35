#include <cmath>

#include <gtest/gtest.h>

#include "models.hpp"
#include "xyzglass/identities.hpp"

using namespace xyzglass;
using xyzglass::testing::chain_model;
using xyzglass::testing::term;

namespace {

Ensemble mc_chain(int length, std::int64_t n) {
  return Ensemble{chain_model(length, {term(1, {0.3, 0.5, 0.4}, {0.6, 0.7, 0.5}),
                                       term(2, {0.6, 0.5, 0.7}, {0.8, 0.6, 0.9})}),
                  SamplingPlan{Method::mc, n, 0, 3, 1}, {}, true};
}

void expect_chain_holds(const ChainReport& r) {
  EXPECT_TRUE(r.pass) << r.name;
  EXPECT_TRUE(r.clip_ok);
  EXPECT_EQ(r.pair_violations, 0);
  for (const auto& s : r.steps) EXPECT_TRUE(s.pass) << r.name << ": " << s.name << " margin " << s.margin;
}

}  // namespace

TEST(MagnetizationBound, MonteCarloChain) {
  const auto r = magnetization_bound_check(mc_chain(3, 3000), 1.2, Axis::z, Axis::x);
  expect_chain_holds(r);
  ASSERT_EQ(r.steps.size(), 8U);
  EXPECT_EQ(r.steps.front().name, "one_point_identity");
  EXPECT_EQ(r.steps.back().name, "magnetization_bound");
  EXPECT_LE(r.lhs.mean, r.rhs.mean);
  EXPECT_GT(r.lhs.mean, 0.0);
}

TEST(MagnetizationBound, QuadratureAndInfiniteTemperature) {
  Ensemble e{chain_model(1, {term(1, {0.2, 0.6, 0.5}, {0.0, 1.0, 1.0})}),
             SamplingPlan{Method::quadrature, 0, 48, 1, 1}, {}, false};
  expect_chain_holds(magnetization_bound_check(e, 0.9, Axis::y, Axis::x));
  const auto hot = magnetization_bound_check(e, 0.0, Axis::y, Axis::x);
  expect_chain_holds(hot);
  EXPECT_NEAR(hot.lhs.mean, 0.0, 1e-15);
}

TEST(MagnetizationBound, RejectsGaugeAxisAsObservable) {
  EXPECT_THROW(magnetization_bound_check(mc_chain(2, 10), 1.0, Axis::x, Axis::x), ConfigError);
  EXPECT_THROW(magnetization_bound_check(mc_chain(2, 10), -1.0, Axis::z, Axis::x), ConfigError);
}

TEST(SusceptibilityBound, MonteCarloChain) {
  const auto r = susceptibility_bound_check(mc_chain(3, 2000), 0.8, Axis::y, Axis::z, Axis::x);
  expect_chain_holds(r);
  EXPECT_LE(r.max_pair_magnitude, 2.0);
  EXPECT_GT(r.max_pair_magnitude, 0.0);
  EXPECT_EQ(r.steps.back().name, "susceptibility_bound");
}

TEST(SusceptibilityBound, InfiniteTemperatureIsZero) {
  const auto r = susceptibility_bound_check(mc_chain(2, 200), 0.0, Axis::z, Axis::z, Axis::y);
  expect_chain_holds(r);
  EXPECT_NEAR(r.lhs.mean, 0.0, 1e-15);
}

TEST(A1, DiagonalGivesAtLeastOne) {
  const auto e = mc_chain(3, 500);
  const auto r = a1_sum(e, Axis::x);
  EXPECT_TRUE(r.clip_ok);
  EXPECT_GE(r.value.mean, 1.0 - 1e-12);
  EXPECT_LE(r.value.mean, 3.0 + 1e-12);
}

TEST(A2, OddInTheField) {
  Ensemble e{chain_model(2, {term(1, {0, 0, 0}, {0, 0, 0}), term(2, {0.4, 0.3, 0.5}, {0.5, 0.5, 0.5})}),
             SamplingPlan{Method::mc, 200, 0, 9, 1}, {}, false};
  const auto r = a2_nonlinear_susceptibility(e, 1.0, Axis::z, Axis::z, 1e-2);
  EXPECT_NEAR(r.magnetization[2].mean, 0.0, 1e-12);
  EXPECT_NEAR(r.magnetization[1].mean, -r.magnetization[3].mean, 1e-12);
  EXPECT_NEAR(r.second_difference.mean, 0.0, 1e-7);
  EXPECT_TRUE(std::isfinite(r.third_difference.mean));
  EXPECT_THROW(a2_nonlinear_susceptibility(e, 1.0, Axis::z, Axis::z, 0.0), DomainError);

  Ensemble noisy{chain_model(2, {term(1, {0, 0, 0}, {0, 0, 0.1}), term(2, {0.4, 0.3, 0.5}, {0.5, 0.5, 0.5})}),
                 SamplingPlan{Method::mc, 10, 0, 9, 1}, {}, false};
  EXPECT_THROW(a2_nonlinear_susceptibility(noisy, 1.0, Axis::z, Axis::z, 1e-2), ConfigError);
}
