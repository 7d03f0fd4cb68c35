#include "xyzglass/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "xyzglass/parallel.hpp"

namespace xyzglass {

namespace {

/// Orthonormal probabilists' Hermite polynomials p_{n-1}(x), p_n(x).
std::pair<double, double> hermite_pair(int n, double x) {
  double prev = 0.0;
  double cur = 1.0;
  for (int k = 0; k < n; ++k) {
    const double next = (x * cur - std::sqrt(static_cast<double>(k)) * prev) / std::sqrt(k + 1.0);
    prev = cur;
    cur = next;
  }
  return {prev, cur};
}

}  // namespace

GaussHermiteRule gauss_hermite_rule(int n) {
  if (n < 1) throw DomainError("Gauss-Hermite rule needs at least one node");
  // Golub-Welsch for the initial nodes, then Newton polishing and the
  // Christoffel weights 1 / (n p_{n-1}(x)^2).
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) jacobi(k, k - 1) = jacobi(k - 1, k) = std::sqrt(static_cast<double>(k));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  GaussHermiteRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = solver.eigenvalues()[i];
    for (int it = 0; it < 3; ++it) {
      const auto [pm1, pn] = hermite_pair(n, x);
      if (pm1 == 0.0) break;
      x -= pn / (std::sqrt(static_cast<double>(n)) * pm1);
    }
    rule.nodes[i] = x;
  }
  // Exact symmetry about zero.
  for (int i = 0; i < n / 2; ++i) {
    const double s = 0.5 * (rule.nodes[n - 1 - i] - rule.nodes[i]);
    rule.nodes[i] = -s;
    rule.nodes[n - 1 - i] = s;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const double pm1 = hermite_pair(n, rule.nodes[i]).first;
    rule.weights[i] = 1.0 / (n * pm1 * pm1);
    total += rule.weights[i];
  }
  for (double& w : rule.weights) w /= total;
  return rule;
}

std::uint64_t QuadratureSpec::total_nodes() const {
  if (nodes_per_dim < 2) throw DomainError("quadrature needs at least 2 nodes per dimension");
  const double log_total = static_cast<double>(dims.size()) * std::log(static_cast<double>(nodes_per_dim));
  if (log_total > std::log(kQuadratureNodeCap) + 1e-12) {
    throw CapacityError("quadrature grid of " + std::to_string(nodes_per_dim) + "^" +
                        std::to_string(dims.size()) + " nodes exceeds the guard of 1e8");
  }
  std::uint64_t total = 1;
  for (std::size_t d = 0; d < dims.size(); ++d) total *= static_cast<std::uint64_t>(nodes_per_dim);
  return total;
}

QuadratureSpec make_quadrature_spec(const Model& model, int nodes_per_dim) {
  QuadratureSpec spec;
  spec.nodes_per_dim = nodes_per_dim;
  spec.base = mean_sample(model);
  for (std::size_t f = 0; f < model.families.size(); ++f) {
    const auto& t = model.params.terms()[f];
    for (std::size_t b = 0; b < model.families[f].size(); ++b) {
      for (Axis a : kAxes) {
        const double d = t.stddev[index(a)];
        if (d > 0.0) {
          spec.dims.push_back({static_cast<int>(f), static_cast<int>(b), a, t.mean[index(a)], d});
        }
      }
    }
  }
  (void)spec.total_nodes();
  return spec;
}

void for_each_node(const QuadratureSpec& spec, std::uint64_t first, std::uint64_t last,
                   const std::function<void(std::uint64_t, double, const DisorderSample&)>& fn) {
  const auto rule = gauss_hermite_rule(spec.nodes_per_dim);
  const auto n = static_cast<std::uint64_t>(spec.nodes_per_dim);
  const std::size_t nd = spec.dims.size();
  DisorderSample sample = spec.base;
  std::vector<std::uint64_t> digit(nd);
  for (std::uint64_t node = first; node < last; ++node) {
    std::uint64_t rem = node;
    double weight = 1.0;
    for (std::size_t d = nd; d-- > 0;) {
      digit[d] = rem % n;
      rem /= n;
    }
    for (std::size_t d = 0; d < nd; ++d) {
      const auto& dim = spec.dims[d];
      sample.couplings[dim.family][dim.bond][index(dim.axis)] = dim.mean + dim.stddev * rule.nodes[digit[d]];
      weight *= rule.weights[digit[d]];
    }
    sample.sample_index = node;
    fn(node, weight, sample);
  }
}

double quadrature_average(const QuadratureSpec& spec, const std::function<double(const DisorderSample&)>& integrand,
                          int threads) {
  const std::uint64_t total = spec.total_nodes();
  const std::uint64_t chunk = 4096;
  const std::size_t n_chunks = static_cast<std::size_t>((total + chunk - 1) / chunk);
  std::vector<double> partial(n_chunks, 0.0);
  parallel_for(n_chunks, threads, [&](std::size_t c) {
    const std::uint64_t lo = c * chunk;
    const std::uint64_t hi = std::min(total, lo + chunk);
    std::vector<double> terms;
    terms.reserve(hi - lo);
    for_each_node(spec, lo, hi, [&](std::uint64_t, double w, const DisorderSample& s) {
      terms.push_back(w * integrand(s));
    });
    partial[c] = pairwise_sum(terms);
  });
  return pairwise_sum(partial);
}

}  // namespace xyzglass
