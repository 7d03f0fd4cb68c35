#pragma once

#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "xyzglass/disorder.hpp"
#include "xyzglass/operators.hpp"

namespace xyzglass {

/// H = - sum_p sum_{X in B_p} sum_w J^w_{X,p} sigma_X^w.
DenseOperator build_hamiltonian(const Model& model, const DisorderSample& sample);

/// Eigendecomposition H = V diag(E) V^dagger with ascending energies.
struct Spectrum {
  Eigen::VectorXd energies;
  ComplexMatrix vectors;
  int sites = 0;

  Eigen::Index dim() const { return energies.size(); }
};

/// Rejects non-Hermitian input and decompositions failing the
/// reconstruction / orthonormality budget of 1e-10 (relative).
Spectrum spectral_decompose(const DenseOperator& h);

/// Operator expressed in the eigenbasis of a spectrum: V^dagger A V.
struct EigenbasisOperator {
  ComplexMatrix m;
};

/// Gibbs state exp(-beta H)/Z. Weights are stored relative to E_min.
class ThermalState {
 public:
  ThermalState(std::shared_ptr<const Spectrum> spectrum, double beta);

  const Spectrum& spectrum() const { return *spectrum_; }
  double beta() const { return beta_; }
  double log_z() const { return log_z_; }
  int sites() const { return spectrum_->sites; }
  /// exp(-beta (E_n - E_min)).
  const Eigen::VectorXd& shifted_weights() const { return weights_; }
  /// Normalized Boltzmann probabilities.
  const Eigen::VectorXd& probabilities() const { return probs_; }

  EigenbasisOperator rotate(const DenseOperator& a) const;

 private:
  std::shared_ptr<const Spectrum> spectrum_;
  double beta_ = 0.0;
  double log_z_ = 0.0;
  Eigen::VectorXd weights_;
  Eigen::VectorXd probs_;
};

/// Convenience: build, decompose and thermalize in one step.
ThermalState thermal_state(const Model& model, const DisorderSample& sample, double beta);
ThermalState thermal_state(const DenseOperator& h, double beta);

double gibbs_expectation(const ThermalState& state, const DenseOperator& a);
double gibbs_expectation(const ThermalState& state, const EigenbasisOperator& a);

/// Duhamel (Kubo) inner product  int_0^1 dt <e^{t beta H} A e^{-t beta H} B>.
double duhamel(const ThermalState& state, const DenseOperator& a, const DenseOperator& b);
double duhamel(const ThermalState& state, const EigenbasisOperator& a, const EigenbasisOperator& b);

/// duhamel(A, B) - <A><B>.
double truncated_duhamel(const ThermalState& state, const DenseOperator& a, const DenseOperator& b);
double truncated_duhamel(const ThermalState& state, const EigenbasisOperator& a,
                         const EigenbasisOperator& b);

/// int_0^1 exp(-beta (t E_m + (1 - t) E_n)) dt for two shifted energies, before
/// division by Z. Exposed for testing.
double duhamel_kernel(double beta, double e_m, double e_n, double degeneracy_tol);

/// log Z / volume.
double free_energy_density(const ThermalState& state, int volume);

/// <o^w> = (1/N) sum_i <sigma_i^w>.
double order_expectation(const ThermalState& state, Axis w);

/// |central difference of <f> in the uniform p = 1 field on axis w
///  - beta N (f; o^w)|. Every J_{i,1}^w is shifted by +-h; the model needs a
/// p = 1 family.
double derivative_identity_residual(const Model& model, const DisorderSample& sample, double beta,
                                    const DenseOperator& f, Axis w, double h);

/// max-norm of [H, sigma^w_Lambda].
double z2_commutator_norm(const DenseOperator& h, Axis w);

/// Single-site operators sigma_i^w for i in [0, N).
std::vector<DenseOperator> site_operators(int n_sites, Axis w);

}  // namespace xyzglass
