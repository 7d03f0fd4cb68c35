#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "xyzglass/disorder.hpp"

namespace xyzglass {

inline constexpr double kQuadratureNodeCap = 1e8;

/// Gauss rule for the standard normal measure: sum_i w_i f(x_i) ~ E f(Z).
/// Exact for polynomials of degree <= 2n - 1. Weights sum to one.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussHermiteRule gauss_hermite_rule(int n);

/// One Gaussian coupling integrated over.
struct RandomDim {
  int family = 0;
  int bond = 0;
  Axis axis = Axis::x;
  double mean = 0.0;
  double stddev = 1.0;
};

/// Tensor-product quadrature over every coupling with Delta > 0. The base
/// sample carries the point-mass (Delta = 0) couplings.
struct QuadratureSpec {
  int nodes_per_dim = 2;
  std::vector<RandomDim> dims;
  DisorderSample base;

  /// nodes_per_dim ^ dims; throws CapacityError above the 1e8 guard.
  std::uint64_t total_nodes() const;
};

QuadratureSpec make_quadrature_spec(const Model& model, int nodes_per_dim);

/// Visits every node in odometer order (last dim fastest) with its sample and
/// weight, for node indices in [first, last).
void for_each_node(const QuadratureSpec& spec, std::uint64_t first, std::uint64_t last,
                   const std::function<void(std::uint64_t, double, const DisorderSample&)>& fn);

/// E[integrand(J)] with J = mu + Delta x on every random dim.
double quadrature_average(const QuadratureSpec& spec, const std::function<double(const DisorderSample&)>& integrand,
                          int threads = 1);

}  // namespace xyzglass
