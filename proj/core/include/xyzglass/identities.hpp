#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "xyzglass/classical_gibbs.hpp"
#include "xyzglass/estimator.hpp"
#include "xyzglass/quantum_gibbs.hpp"

namespace xyzglass {

/// Acceptance thresholds. All are recorded in reports.
struct Tolerances {
  double z_score = 4.0;          ///< Monte Carlo: |mean / std_error| bound
  double quadrature = 1e-8;      ///< deterministic averages: absolute bound
  double clip_fraction = 0.01;   ///< max share of clipped square-root arguments
  double exact = 1e-12;          ///< slack for exact inequalities
};

/// A model, the way its disorder is averaged, and the thresholds to apply.
struct Ensemble {
  Model model;
  SamplingPlan plan;
  Tolerances tolerances;
  /// Monte Carlo failures are re-run once with twice the samples.
  bool allow_retry = true;
};

/// Observables of a gauge identity: sigma_X^w, sigma_Y^w (and optionally
/// sigma_Z^w), thermal inverse temperature beta, gauge axis u != w.
struct IdentityQuery {
  std::vector<int> x;
  std::vector<int> y;
  std::vector<int> z;  ///< third factor of the three-point extension
  Axis w = Axis::z;
  Axis u = Axis::x;
  double beta = 1.0;
};

/// E[lhs] == E[rhs] checked through the paired per-sample residual lhs - rhs.
struct IdentityCheck {
  std::string name;
  EstimatorResult lhs;
  EstimatorResult rhs;
  EstimatorResult residual;
  double tolerance = 0.0;  ///< z bound (mc) or absolute bound
  bool pass = false;
  int retries = 0;
};

/// E<sigma_X^w> = E<sigma_X^w><tau_X>_N.
IdentityCheck one_point_identity(const Ensemble& ensemble, const IdentityQuery& query);

/// Product form E<X><Y>(1 - <tau_X tau_Y>_N) and joint form E<XY>(...) .
std::array<IdentityCheck, 2> two_point_identities(const Ensemble& ensemble, const IdentityQuery& query);

/// Duhamel and truncated Duhamel forms.
std::array<IdentityCheck, 2> duhamel_identity(const Ensemble& ensemble, const IdentityQuery& query);

/// E<X><Y><Z> = E<X><Y><Z><tau_X tau_Y tau_Z>_N.
IdentityCheck three_point_identity(const Ensemble& ensemble, const IdentityQuery& query);

/// All of the above from one pass over the disorder (three-point only when
/// query.z is non-empty). Order: one_point, two_point_product,
/// two_point_joint, duhamel, truncated_duhamel[, three_point].
std::vector<IdentityCheck> lemma_suite(const Ensemble& ensemble, const IdentityQuery& query);

/// Standard errors of the one-point residual: paired (common disorder) versus
/// two independent runs for E<sigma_X> and E<sigma_X><tau_X>.
struct PairingDiagnostic {
  double paired_std_error = 0.0;
  double unpaired_std_error = 0.0;
  double ratio() const { return paired_std_error / unpaired_std_error; }
};
PairingDiagnostic pairing_diagnostic(const Ensemble& ensemble, const IdentityQuery& query);

/// One link lhs (relation) rhs of an inequality chain.
struct ChainStep {
  std::string name;
  std::string relation;  ///< "<=" or "=="
  EstimatorResult lhs;
  EstimatorResult rhs;
  double margin = 0.0;     ///< rhs - lhs ("<=") or residual ("==")
  double tolerance = 0.0;  ///< allowed violation
  bool pass = false;
};

struct ChainReport {
  std::string name;
  std::vector<ChainStep> steps;
  EstimatorResult lhs;  ///< the bounded quantity
  EstimatorResult rhs;  ///< the bound
  ClipStats clips;
  bool clip_ok = true;
  std::int64_t pair_violations = 0;  ///< samples with |(sigma;sigma)| > 2
  double max_pair_magnitude = 0.0;
  bool pass = false;
};

/// E<o^w> <= sqrt((1/N) sum_i E<tau_i>_N) with every intermediate link.
ChainReport magnetization_bound_check(const Ensemble& ensemble, double beta, Axis w, Axis u);

/// chi = (beta/N)|sum_ij E(sigma_i^w; sigma_j^v)| <= (2 beta/N) sum_ij sqrt(E<tau_i tau_j>_N).
ChainReport susceptibility_bound_check(const Ensemble& ensemble, double beta, Axis v, Axis w, Axis u);

/// (1/N) sum_ij sqrt(E<tau_i tau_j>_N) on the Nishimori line of axis u.
struct A1Result {
  EstimatorResult value;
  ClipStats clips;
  bool clip_ok = true;
};
A1Result a1_sum(const Ensemble& ensemble, Axis u);

/// Finite differences of m_L^w in a uniform deterministic field mu_1^v
/// around zero, all p = 1 couplings otherwise removed.
struct A2Result {
  EstimatorResult third_difference;   ///< ~ d^3 m / d mu^3 at 0
  EstimatorResult second_difference;  ///< ~ d^2 m / d mu^2 at 0 (zero by symmetry)
  std::array<EstimatorResult, 5> magnetization;  ///< at -2h, -h, 0, h, 2h
  double step = 0.0;
};
A2Result a2_nonlinear_susceptibility(const Ensemble& ensemble, double beta, Axis v, Axis w, double h);

/// m_L^w = E<o^w>, q_L^w = (1/N) sum_i E<sigma_i^w>^2, and p_L = E psi_L.
struct OrderParameters {
  std::array<EstimatorResult, 3> m;
  std::array<EstimatorResult, 3> q;
  EstimatorResult free_energy;
};
OrderParameters finite_size_order_parameters(const Ensemble& ensemble, double beta);

}  // namespace xyzglass
