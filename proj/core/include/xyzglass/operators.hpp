#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "xyzglass/types.hpp"

namespace xyzglass {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Dense operator on (C^2)^{⊗N}. Site i occupies tensor slot i, i.e. bit N-1-i
/// of the computational basis index (site 0 is the most significant factor).
/// Basis bit 0 is the sigma^z = +1 state.
class DenseOperator {
 public:
  DenseOperator() = default;
  DenseOperator(int sites, ComplexMatrix matrix, bool hermitian);

  static DenseOperator identity(int sites);
  static DenseOperator zero(int sites);

  int sites() const { return sites_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }
  bool hermitian() const { return hermitian_; }

  DenseOperator operator*(const DenseOperator& rhs) const;
  DenseOperator operator+(const DenseOperator& rhs) const;
  DenseOperator operator-(const DenseOperator& rhs) const;
  DenseOperator scaled(Complex c) const;
  DenseOperator adjoint() const;

 private:
  int sites_ = 0;
  ComplexMatrix matrix_;
  bool hermitian_ = false;
};

/// ±1 per site.
class SpinConfiguration {
 public:
  SpinConfiguration() = default;
  explicit SpinConfiguration(std::vector<int> values);

  static SpinConfiguration all_up(int sites) { return SpinConfiguration(std::vector<int>(sites, 1)); }
  static SpinConfiguration from_bits(int sites, std::uint64_t down_bits);

  int size() const { return static_cast<int>(values_.size()); }
  int operator[](int i) const { return values_[i]; }
  const std::vector<int>& values() const { return values_; }

  /// tau_X = prod_{i in X} tau_i.
  int product(std::span<const int> sites) const;

 private:
  std::vector<int> values_;
};

/// Basis-index mask of the tensor slots occupied by `sites`.
std::uint64_t basis_mask(int n_sites, std::span<const int> sites);

/// Adds coeff * sigma_X^w (X given by its basis mask) into `m`.
void add_pauli_string(ComplexMatrix& m, std::uint64_t mask, Axis w, Complex coeff);

DenseOperator pauli_site(int n_sites, int site, Axis w);
DenseOperator pauli_product(int n_sites, std::span<const int> sites, Axis w);
DenseOperator pauli_product(int n_sites, std::initializer_list<int> sites, Axis w);
DenseOperator gauge_unitary(int n_sites, Axis u, const SpinConfiguration& tau);
DenseOperator global_flip(int n_sites, Axis w);

double max_norm(const ComplexMatrix& m);
double max_norm(const DenseOperator& op);
DenseOperator commutator(const DenseOperator& a, const DenseOperator& b);

}  // namespace xyzglass
