#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "xyzglass/disorder.hpp"
#include "xyzglass/lattice.hpp"
#include "xyzglass/operators.hpp"

namespace xyzglass {

/// Classical Ising model H_cl(tau, K) = -sum_p sum_X K_{X,p} tau_X together
/// with one inverse temperature per p. Configurations weigh
/// exp(sum_p beta_p sum_X K_{X,p} tau_X).
struct ClassicalModel {
  int sites = 0;
  std::vector<BondFamily> families;
  std::vector<std::vector<double>> couplings;  ///< K[family][bond]
  std::vector<double> betas;                   ///< beta_p per family

  void validate() const;
};

/// Classical model on the Nishimori line for the transformed couplings.
ClassicalModel nishimori_classical_model(const Model& model, const NishimoriData& data);

double classical_energy(const ClassicalModel& model, const SpinConfiguration& tau);

/// Exact thermal averages of tau_X for several site masks (bit i = site i)
/// in one enumeration pass, plus log Z.
struct ClassicalAverages {
  double log_z = 0.0;
  std::vector<double> values;
};

ClassicalAverages classical_averages(const ClassicalModel& model, std::span<const std::uint64_t> masks,
                                     int threads = 1);

/// <tau_X>.
double classical_expectation(const ClassicalModel& model, std::span<const int> x, int threads = 1);
/// <tau_X tau_Y> = <tau_{X xor Y}>.
double classical_expectation(const ClassicalModel& model, std::span<const int> x, std::span<const int> y,
                             int threads = 1);

/// Matrix of <tau_i tau_j>.
Eigen::MatrixXd classical_correlation_matrix(const ClassicalModel& model, int threads = 1);

}  // namespace xyzglass
