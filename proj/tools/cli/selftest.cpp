#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "cli/checks.hpp"
#include "cli/commands.hpp"
#include "cli/report.hpp"
#include "xyzglass/reference.hpp"

namespace xyzglass::cli {

namespace {

using Rng = std::mt19937_64;

Model chain(int length, const std::vector<CouplingTerm>& terms) {
  Model m;
  m.lattice = build_lattice(1, length, kQuantumSiteCap);
  m.params = CouplingParams(terms);
  for (const auto& t : m.params.terms()) {
    InteractionShape s{t.p, {}};
    for (int k = 0; k < t.p; ++k) s.offsets.push_back({k});
    m.families.push_back(generate_bonds(m.lattice, s, Boundary::open));
  }
  m.validate();
  return m;
}

/// Chain with p = 1 and (when it fits) p = 2, 3 terms of random law.
Model random_model(Rng& rng, int length) {
  std::uniform_real_distribution<double> mu(-1.0, 1.0);
  std::uniform_real_distribution<double> sd(0.3, 1.5);
  std::vector<CouplingTerm> terms;
  for (int p = 1; p <= std::min(length, 3); ++p) {
    terms.push_back({p, {mu(rng), mu(rng), mu(rng)}, {sd(rng), sd(rng), sd(rng)}});
  }
  return chain(length, terms);
}

DenseOperator random_observable(Rng& rng, int n) {
  std::normal_distribution<double> g;
  ComplexMatrix m = ComplexMatrix::Zero(std::int64_t{1} << n, std::int64_t{1} << n);
  for (int k = 0; k < 3; ++k) add_pauli_string(m, rng() & ((std::uint64_t{1} << n) - 1), kAxes[rng() % 3], g(rng));
  return DenseOperator(n, m, true);
}

CheckOutcome finish(std::string name, int instances, double err, double tol) {
  return {std::move(name), instances, err, tol, err < tol};
}

}  // namespace

CheckOutcome check_operator_algebra(int instances, std::uint64_t seed) {
  Rng rng(seed);
  double err = 0.0;
  for (int t = 0; t < instances; ++t) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const auto dim = std::int64_t{1} << n;
    const ComplexMatrix id = ComplexMatrix::Identity(dim, dim);
    const int k = static_cast<int>(rng() % n);
    const int j = static_cast<int>(rng() % n);
    for (Axis a : kAxes) {
      const auto [b, c] = other_axes(a);
      const auto comm = commutator(pauli_site(n, k, a), pauli_site(n, j, b)).matrix();
      const ComplexMatrix expect =
          k == j ? ComplexMatrix(Complex(0.0, 2.0) * pauli_site(n, j, c).matrix()) : ComplexMatrix::Zero(dim, dim);
      err = std::max(err, max_norm(comm - expect));
      const auto s = pauli_site(n, k, a).matrix();
      err = std::max(err, max_norm(s * s - id));
    }
    const auto tau = SpinConfiguration::from_bits(n, rng());
    const Axis u = kAxes[rng() % 3];
    const auto gauge = gauge_unitary(n, u, tau).matrix();
    for (Axis w : kAxes) {
      const auto s = pauli_site(n, k, w).matrix();
      const double sign = w == u ? 1.0 : tau[k];
      err = std::max(err, max_norm(gauge * s * gauge.adjoint() - sign * s));
    }
    const Model m = random_model(rng, n);
    const auto sample = sample_disorder(m, seed, t);
    const auto h = build_hamiltonian(m, sample).matrix();
    const auto h_gauged = build_hamiltonian(m, gauge_transform_couplings(m, sample, tau, u)).matrix();
    err = std::max(err, max_norm(gauge * h * gauge.adjoint() - h_gauged));
  }
  return finish("operator_algebra", instances, err, 1e-12);
}

CheckOutcome check_change_of_variables(int draws, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> mu(-2.0, 2.0);
  std::uniform_real_distribution<double> sd(0.2, 2.0);
  const Model m = chain(1, {{1, {mu(rng), mu(rng), mu(rng)}, {sd(rng), sd(rng), sd(rng)}}});
  const auto& term = m.params.terms()[0];
  double err = 0.0;
  for (int k = 0; k < draws; ++k) {
    const auto s = sample_disorder(m, seed, k);
    const Axis u = kAxes[k % 3];
    const auto [v, w] = other_axes(u);
    const auto nd = nishimori_transform(m, s, u);
    const auto& j = s.couplings[0][0];
    const double ev = (j[index(v)] - term.mean[index(v)]) / term.stddev[index(v)];
    const double ew = (j[index(w)] - term.mean[index(w)]) / term.stddev[index(w)];
    const double lhs = std::pow(nd.K[0][0] - nd.betas[0], 2) + std::pow(nd.G[0][0], 2);
    err = std::max(err, std::abs(lhs - (ev * ev + ew * ew)) / std::max(1.0, lhs));
  }
  return finish("change_of_variables", draws, err, 1e-12);
}

CheckOutcome check_density_covariance(int draws, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> mu(-2.0, 2.0);
  std::uniform_real_distribution<double> sd(0.2, 2.0);
  const Model m = chain(1, {{1, {mu(rng), mu(rng), mu(rng)}, {sd(rng), sd(rng), sd(rng)}}});
  const auto& term = m.params.terms()[0];
  double err = 0.0;
  for (int k = 0; k < draws; ++k) {
    const auto s = sample_disorder(m, seed, k);
    const Axis u = kAxes[k % 3];
    const auto [v, w] = other_axes(u);
    const auto nd = nishimori_transform(m, s, u);
    const auto& j = s.couplings[0][0];
    // P(-J^v, -J^w) = P(J^v, J^w) exp(-2 beta K), written as densities
    auto density = [&](double sign) {
      return std::exp(gaussian_log_density(sign * j[index(v)], term.mean[index(v)], term.stddev[index(v)]) +
                      gaussian_log_density(sign * j[index(w)], term.mean[index(w)], term.stddev[index(w)]));
    };
    const double lhs = density(-1.0);
    const double rhs = density(1.0) * std::exp(-2.0 * nd.betas[0] * nd.K[0][0]);
    if (lhs == 0.0 && rhs == 0.0) continue;
    err = std::max(err, std::abs(lhs - rhs) / std::max(std::abs(lhs), std::abs(rhs)));
  }
  return finish("density_covariance", draws, err, 1e-10);
}

CheckOutcome check_duhamel_simpson(int instances, std::uint64_t seed, int intervals) {
  Rng rng(seed);
  // beta times the spectral width stays moderate so that the Simpson
  // reference itself is accurate to well below the tolerance
  std::uniform_real_distribution<double> beta(0.1, 1.0);
  double err = 0.0;
  for (int t = 0; t < instances; ++t) {
    const int n = 1 + t % 3;
    const Model m = random_model(rng, n);
    const auto h = build_hamiltonian(m, sample_disorder(m, seed, t));
    const double b = beta(rng);
    const auto st = thermal_state(h, b);
    const auto x = random_observable(rng, n);
    const auto y = random_observable(rng, n);
    const double ref = reference::duhamel_simpson(h.matrix(), b, x.matrix(), y.matrix(), intervals);
    err = std::max(err, std::abs(duhamel(st, x, y) - ref));
  }
  return finish("duhamel_vs_simpson", instances, err, 1e-7);
}

CheckOutcome check_derivative_identity(int instances, std::uint64_t seed, double h) {
  Rng rng(seed);
  std::uniform_real_distribution<double> beta(0.2, 1.5);
  double err = 0.0;
  for (int t = 0; t < instances; ++t) {
    const int n = 1 + t % 3;
    const Model m = random_model(rng, n);
    const auto f = random_observable(rng, n);
    err = std::max(err, derivative_identity_residual(m, sample_disorder(m, seed, t), beta(rng), f, kAxes[t % 3], h));
  }
  return finish("derivative_identity", instances, err, 1e-6);
}

CheckOutcome check_classical_reduction(int instances, std::uint64_t seed, int max_sites) {
  Rng rng(seed);
  std::uniform_real_distribution<double> mu(-1.0, 1.0);
  std::uniform_real_distribution<double> beta(0.2, 1.5);
  double err = 0.0;
  for (int t = 0; t < instances; ++t) {
    const int n = 2 + t % (max_sites - 1);
    const Axis w = kAxes[t % 3];
    std::vector<CouplingTerm> terms;
    for (int p = 1; p <= std::min(n, 3); ++p) {
      CouplingTerm term{p, {}, {}};
      term.mean[index(w)] = mu(rng);
      term.stddev[index(w)] = 1.0;
      terms.push_back(term);
    }
    const Model m = chain(n, terms);
    const auto sample = sample_disorder(m, seed, t);
    const double b = beta(rng);
    const auto st = thermal_state(m, sample, b);
    std::vector<reference::Term> classical;
    for (std::size_t f = 0; f < m.families.size(); ++f) {
      for (std::size_t k = 0; k < m.families[f].size(); ++k) {
        classical.push_back({m.families[f].bonds[k], b * sample.couplings[f][k][index(w)]});
      }
    }
    std::vector<int> x;
    for (int i = 0; i < n; ++i) {
      if (rng() & 1U) x.push_back(i);
    }
    if (x.empty()) x.push_back(0);
    const double q = gibbs_expectation(st, pauli_product(n, x, w));
    err = std::max(err, std::abs(q - reference::classical(n, classical, x)));
  }
  return finish("classical_reduction", instances, err, 1e-10);
}

CheckOutcome check_gibbs_expm(int instances, std::uint64_t seed) {
  Rng rng(seed);
  double err = 0.0;
  for (int t = 0; t < instances; ++t) {
    const int n = 1 + t % 3;
    const Model m = random_model(rng, n);
    const auto h = build_hamiltonian(m, sample_disorder(m, seed, t));
    const auto x = random_observable(rng, n);
    const double b = 0.25 * (1 + t % 6);
    err = std::max(err, std::abs(gibbs_expectation(thermal_state(h, b), x) - reference::gibbs(h.matrix(), b, x.matrix())));
  }
  return finish("gibbs_vs_expm", instances, err, 1e-10);
}

CheckOutcome check_gauss_hermite() {
  double err = 0.0;
  int rules = 0;
  for (int n : {2, 5, 8, 16, 24}) {
    ++rules;
    const auto r = gauss_hermite_rule(n);
    double exact = 1.0;  // E Z^k for even k
    for (int k = 0; k <= std::min(2 * n - 1, 16); ++k) {
      double acc = 0.0, scale = 0.0;
      for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        acc += r.weights[i] * std::pow(r.nodes[i], k);
        scale += r.weights[i] * std::pow(std::abs(r.nodes[i]), k);
      }
      const double target = k % 2 == 1 ? 0.0 : exact;
      if (k % 2 == 1) exact *= k;
      err = std::max(err, std::abs(acc - target) / std::max(1.0, scale));
    }
  }
  return finish("gauss_hermite_moments", rules, err, 1e-12);
}

CommandResult selftest(const RunConfig& cfg) {
  const int n = cfg.selftest_instances;
  const std::uint64_t seed = cfg.plan.seed;
  CommandResult res;
  std::vector<CheckOutcome> outcomes = {
      check_operator_algebra(n, seed),
      check_change_of_variables(100 * n, seed),
      check_density_covariance(100 * n, seed),
      check_gibbs_expm(n, seed),
      check_duhamel_simpson(n, seed),
      check_derivative_identity(n, seed),
      check_classical_reduction(n, seed, 6),
      check_gauss_hermite(),
  };

  // one deterministic Lemma check: single site, 24-node grid
  Model m = chain(1, {{1, {0.3, 0.5, 0.5}, {0.0, 1.0, 1.0}}});
  const Ensemble ens{m, SamplingPlan{Method::quadrature, 0, 24, seed, cfg.plan.threads}, cfg.tolerances, false};
  double worst = 0.0;
  bool lemma_pass = true;
  for (const auto& c : lemma_suite(ens, IdentityQuery{{0}, {0}, {}, Axis::z, Axis::x, 0.5})) {
    worst = std::max(worst, std::abs(c.residual.mean));
    lemma_pass = lemma_pass && c.pass;
  }
  outcomes.push_back({"lemma_single_site_quadrature", 1, worst, cfg.tolerances.quadrature, lemma_pass});

  json checks = json::array();
  for (const auto& o : outcomes) {
    checks.push_back({{"name", o.name},
                      {"instances", o.instances},
                      {"max_error", {{"value", o.max_error}, {"method", "exact"}, {"tolerance", o.tolerance}}},
                      {"pass", o.pass}});
    res.pass = res.pass && o.pass;
    std::ostringstream line;
    line << o.name << " max_error=" << o.max_error << " tolerance=" << o.tolerance;
    res.summary.push_back(std::string(o.pass ? "PASS " : "FAIL ") + line.str());
  }
  res.results["selftest"] = checks;
  return res;
}

}  // namespace xyzglass::cli
