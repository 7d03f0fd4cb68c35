#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "xyzglass/lattice.hpp"
#include "xyzglass/operators.hpp"
#include "xyzglass/types.hpp"

namespace xyzglass {

/// Gaussian law of the couplings J_{X,p}^w for one p.
struct CouplingTerm {
  int p = 0;
  AxisTriple mean{};    ///< mu_p^w
  AxisTriple stddev{};  ///< Delta_p^w >= 0; zero means a point mass at the mean
};

/// Coupling parameters for every p in the model, ascending in p.
class CouplingParams {
 public:
  CouplingParams() = default;
  CouplingParams(std::vector<CouplingTerm> terms, bool even_p_model = false);

  const std::vector<CouplingTerm>& terms() const { return terms_; }
  std::vector<CouplingTerm>& mutable_terms() { return terms_; }
  bool even_p_model() const { return even_p_model_; }

  /// Throws ConfigError when p is absent.
  const CouplingTerm& term(int p) const;
  bool has(int p) const;

  /// Non-negative finite widths, distinct p, and for mixed even p-spin models
  /// every p > 1 even.
  void validate() const;

  /// Requirements for using `u` as the gauge axis: for both transformed axes
  /// either Delta > 0, or mu = Delta = 0 (the component vanishes identically).
  void validate_gauge_axis(Axis u) const;

 private:
  std::vector<CouplingTerm> terms_;
  bool even_p_model_ = false;
};

/// Lattice, bond families and coupling law. families[k].p == params.terms()[k].p.
struct Model {
  Lattice lattice;
  std::vector<BondFamily> families;
  CouplingParams params;

  int sites() const { return lattice.volume(); }
  void validate() const;
  /// Index of the family with the given p, or -1.
  int family_index(int p) const;
};

/// Realized couplings J[family][bond][axis].
struct DisorderSample {
  std::vector<std::vector<AxisTriple>> couplings;
  std::uint64_t seed = 0;
  std::uint64_t sample_index = 0;
};

/// Nishimori change of variables for gauge axis u.
struct NishimoriData {
  Axis u = Axis::x;
  std::vector<double> betas;           ///< beta_p^u per family
  std::vector<std::vector<double>> K;  ///< K^u_{X,p}
  std::vector<std::vector<double>> G;  ///< G^u_{X,p}
};

/// Sample k uses an engine seeded from (seed, k) only; draws go family, bond,
/// axis x,y,z, one standard normal each (also for zero widths).
DisorderSample sample_disorder(const Model& model, std::uint64_t seed, std::uint64_t sample_index);

/// All couplings at their means.
DisorderSample mean_sample(const Model& model);

/// log P(J) for J ~ N(mu, delta^2). Throws DomainError for delta <= 0.
double gaussian_log_density(double j, double mu, double delta);

/// beta_p^u = sqrt((mu^v/Delta^v)^2 + (mu^w/Delta^w)^2). A component with
/// mu = Delta = 0 contributes nothing; Delta = 0 with mu != 0 is a DomainError.
double nishimori_beta(const CouplingParams& params, int p, Axis u);

NishimoriData nishimori_transform(const Model& model, const DisorderSample& sample, Axis u);

/// J^w_{X,p} -> J^w_{X,p} tau_X for w != u.
DisorderSample gauge_transform_couplings(const Model& model, const DisorderSample& sample,
                                         const SpinConfiguration& tau, Axis u);

/// True when the Hamiltonian commutes with the global flip sigma^w_Lambda for
/// every disorder realization: odd-p couplings vanish identically on axes != w.
bool z2_symmetric_in_law(const CouplingParams& params, Axis w);

}  // namespace xyzglass
