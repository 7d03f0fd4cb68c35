#pragma once

#include <cstdint>
#include <string>

namespace xyzglass::cli {

/// Worst deviation over randomized instances against a fixed bound.
struct CheckOutcome {
  std::string name;
  int instances = 0;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Commutation relations, (sigma^w)^2 = 1, gauge conjugation and gauge
/// invariance of the Hamiltonian on chains of up to four sites.
CheckOutcome check_operator_algebra(int instances, std::uint64_t seed);
/// (K - beta)^2 + G^2 against the sum of squared standardized couplings.
CheckOutcome check_change_of_variables(int draws, std::uint64_t seed);
/// log P(tau J) - log P(J) against beta K (tau - 1), relative error.
CheckOutcome check_density_covariance(int draws, std::uint64_t seed);
/// Spectral Duhamel product against composite Simpson with `intervals` panels.
CheckOutcome check_duhamel_simpson(int instances, std::uint64_t seed, int intervals = 200);
/// Central difference in the uniform field against beta N times truncated Duhamel.
CheckOutcome check_derivative_identity(int instances, std::uint64_t seed, double h = 1e-4);
/// Models with couplings on one axis only against direct classical enumeration.
CheckOutcome check_classical_reduction(int instances, std::uint64_t seed, int max_sites);
/// Spectral Gibbs averages against series matrix exponentials.
CheckOutcome check_gibbs_expm(int instances, std::uint64_t seed);
/// Gauss-Hermite moments up to degree 2n - 1.
CheckOutcome check_gauss_hermite();

}  // namespace xyzglass::cli
