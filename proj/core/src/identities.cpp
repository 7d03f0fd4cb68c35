#include "xyzglass/identities.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace xyzglass {

namespace {

enum Col : std::size_t {
  kOne = 0,
  kOneGauge,
  kProduct,
  kProductGauge,
  kJoint,
  kJointGauge,
  kDuhamel,
  kDuhamelGauge,
  kTruncated,
  kTruncatedGauge,
  kTriple,
  kTripleGauge,
  kColumns
};

void validate_query(const Ensemble& e, const IdentityQuery& q) {
  if (q.u == q.w) throw ConfigError("gauge axis u must differ from the observable axis w");
  if (!(q.beta >= 0.0)) throw ConfigError("beta must be >= 0");
  e.model.validate();
  e.model.params.validate_gauge_axis(q.u);
  const int n = e.model.sites();
  for (const auto* set : {&q.x, &q.y, &q.z}) {
    for (int s : *set) {
      if (s < 0 || s >= n) throw ConfigError("observable site " + std::to_string(s) + " out of range");
    }
  }
}

EnsembleTable lemma_table(const Ensemble& e, const IdentityQuery& q, const SamplingPlan& plan) {
  const int n = e.model.sites();
  const bool triple = !q.z.empty();
  const DenseOperator sx = pauli_product(n, q.x, q.w);
  const DenseOperator sy = pauli_product(n, q.y, q.w);
  const DenseOperator sz = triple ? pauli_product(n, q.z, q.w) : DenseOperator::identity(n);
  const std::uint64_t mx = site_mask(q.x);
  const std::uint64_t my = site_mask(q.y);
  const std::uint64_t mz = site_mask(q.z);
  const std::vector<std::uint64_t> masks = {mx, mx ^ my, mx ^ my ^ mz};

  return evaluate_ensemble(e.model, plan, kColumns, [&](const DisorderSample& s, std::span<double> out) {
    const ThermalState state = thermal_state(e.model, s, q.beta);
    const auto a_op = state.rotate(sx);
    const auto b_op = state.rotate(sy);
    const double a = gibbs_expectation(state, a_op);
    const double b = gibbs_expectation(state, b_op);
    const double ab = gibbs_expectation(state, EigenbasisOperator{a_op.m * b_op.m});
    const double duh = duhamel(state, a_op, b_op);
    const double c = triple ? gibbs_expectation(state, state.rotate(sz)) : 0.0;

    const ClassicalModel cm = nishimori_classical_model(e.model, nishimori_transform(e.model, s, q.u));
    const auto tau = classical_averages(cm, masks).values;

    out[kOne] = a;
    out[kOneGauge] = a * tau[0];
    out[kProduct] = a * b;
    out[kProductGauge] = a * b * tau[1];
    out[kJoint] = ab;
    out[kJointGauge] = ab * tau[1];
    out[kDuhamel] = duh;
    out[kDuhamelGauge] = duh * tau[1];
    out[kTruncated] = duh - a * b;
    out[kTruncatedGauge] = (duh - a * b) * tau[1];
    out[kTriple] = a * b * c;
    out[kTripleGauge] = a * b * c * tau[2];
  });
}

IdentityCheck make_check(const std::string& name, const EnsembleTable& t, std::size_t lhs, std::size_t rhs,
                         const Tolerances& tol) {
  IdentityCheck c;
  c.name = name;
  c.lhs = t.estimate_column(lhs);
  c.rhs = t.estimate_column(rhs);
  c.residual = t.estimate_difference(lhs, rhs);
  if (c.residual.method == Method::mc) {
    if (c.residual.std_error > 0.0) {
      c.tolerance = tol.z_score;
      c.pass = std::abs(c.residual.z_score()) < tol.z_score;
    } else {
      c.tolerance = tol.exact;
      c.pass = std::abs(c.residual.mean) <= tol.exact;
    }
  } else {
    c.tolerance = tol.quadrature;
    c.pass = std::abs(c.residual.mean) < tol.quadrature;
  }
  return c;
}

std::vector<IdentityCheck> checks_from(const EnsembleTable& t, bool triple, const Tolerances& tol) {
  std::vector<IdentityCheck> out = {
      make_check("one_point", t, kOne, kOneGauge, tol),
      make_check("two_point_product", t, kProduct, kProductGauge, tol),
      make_check("two_point_joint", t, kJoint, kJointGauge, tol),
      make_check("duhamel", t, kDuhamel, kDuhamelGauge, tol),
      make_check("truncated_duhamel", t, kTruncated, kTruncatedGauge, tol),
  };
  if (triple) out.push_back(make_check("three_point", t, kTriple, kTripleGauge, tol));
  return out;
}

}  // namespace

std::vector<IdentityCheck> lemma_suite(const Ensemble& ensemble, const IdentityQuery& query) {
  validate_query(ensemble, query);
  const bool triple = !query.z.empty();
  auto checks = checks_from(lemma_table(ensemble, query, ensemble.plan), triple, ensemble.tolerances);
  const bool all_pass = std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.pass; });
  if (all_pass || !ensemble.allow_retry || ensemble.plan.method != Method::mc) return checks;

  SamplingPlan doubled = ensemble.plan;
  doubled.n_samples *= 2;
  auto retried = checks_from(lemma_table(ensemble, query, doubled), triple, ensemble.tolerances);
  for (auto& c : retried) c.retries = 1;
  return retried;
}

IdentityCheck one_point_identity(const Ensemble& ensemble, const IdentityQuery& query) {
  return lemma_suite(ensemble, query)[0];
}

std::array<IdentityCheck, 2> two_point_identities(const Ensemble& ensemble, const IdentityQuery& query) {
  const auto s = lemma_suite(ensemble, query);
  return {s[1], s[2]};
}

std::array<IdentityCheck, 2> duhamel_identity(const Ensemble& ensemble, const IdentityQuery& query) {
  const auto s = lemma_suite(ensemble, query);
  return {s[3], s[4]};
}

IdentityCheck three_point_identity(const Ensemble& ensemble, const IdentityQuery& query) {
  if (query.z.empty()) throw ConfigError("three-point identity needs a third site set");
  return lemma_suite(ensemble, query)[5];
}

PairingDiagnostic pairing_diagnostic(const Ensemble& ensemble, const IdentityQuery& query) {
  validate_query(ensemble, query);
  if (ensemble.plan.method != Method::mc) throw ConfigError("pairing diagnostic needs Monte Carlo sampling");
  const auto t = lemma_table(ensemble, query, ensemble.plan);
  const double se_a = t.estimate_column(kOne).std_error;
  const double se_b = t.estimate_column(kOneGauge).std_error;
  return {t.estimate_difference(kOne, kOneGauge).std_error, std::hypot(se_a, se_b)};
}

}  // namespace xyzglass
