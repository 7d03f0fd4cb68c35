#include "xyzglass/operators.hpp"

#include <bit>
#include <string>

#include "xyzglass/lattice.hpp"

namespace xyzglass {

namespace {

void check_sites(int n_sites) {
  if (n_sites < 0) throw ConfigError("negative site count");
  if (n_sites > kQuantumSiteCap) {
    throw CapacityError("Hilbert space of " + std::to_string(n_sites) +
                        " sites exceeds the quantum site cap of " + std::to_string(kQuantumSiteCap));
  }
}

Eigen::Index dimension(int n_sites) { return Eigen::Index{1} << n_sites; }

}  // namespace

DenseOperator::DenseOperator(int sites, ComplexMatrix matrix, bool hermitian)
    : sites_(sites), matrix_(std::move(matrix)), hermitian_(hermitian) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() != dimension(sites_)) {
    throw ConfigError("operator matrix is not 2^N x 2^N");
  }
  if (hermitian_ && max_norm(matrix_ - matrix_.adjoint()) >= 1e-12) {
    throw DomainError("operator flagged Hermitian is not Hermitian");
  }
}

DenseOperator DenseOperator::identity(int sites) {
  check_sites(sites);
  return DenseOperator(sites, ComplexMatrix::Identity(dimension(sites), dimension(sites)), true);
}

DenseOperator DenseOperator::zero(int sites) {
  check_sites(sites);
  return DenseOperator(sites, ComplexMatrix::Zero(dimension(sites), dimension(sites)), true);
}

DenseOperator DenseOperator::operator*(const DenseOperator& rhs) const {
  DenseOperator out;
  out.sites_ = sites_;
  out.matrix_ = matrix_ * rhs.matrix_;
  out.hermitian_ = false;
  return out;
}

DenseOperator DenseOperator::operator+(const DenseOperator& rhs) const {
  DenseOperator out;
  out.sites_ = sites_;
  out.matrix_ = matrix_ + rhs.matrix_;
  out.hermitian_ = hermitian_ && rhs.hermitian_;
  return out;
}

DenseOperator DenseOperator::operator-(const DenseOperator& rhs) const {
  DenseOperator out;
  out.sites_ = sites_;
  out.matrix_ = matrix_ - rhs.matrix_;
  out.hermitian_ = hermitian_ && rhs.hermitian_;
  return out;
}

DenseOperator DenseOperator::scaled(Complex c) const {
  DenseOperator out;
  out.sites_ = sites_;
  out.matrix_ = matrix_ * c;
  out.hermitian_ = hermitian_ && c.imag() == 0.0;
  return out;
}

DenseOperator DenseOperator::adjoint() const {
  DenseOperator out;
  out.sites_ = sites_;
  out.matrix_ = matrix_.adjoint();
  out.hermitian_ = hermitian_;
  return out;
}

SpinConfiguration::SpinConfiguration(std::vector<int> values) : values_(std::move(values)) {
  for (int v : values_) {
    if (v != 1 && v != -1) throw ConfigError("spin configuration entries must be +1 or -1");
  }
}

SpinConfiguration SpinConfiguration::from_bits(int sites, std::uint64_t down_bits) {
  std::vector<int> v(sites);
  for (int i = 0; i < sites; ++i) v[i] = ((down_bits >> i) & 1U) ? -1 : 1;
  return SpinConfiguration(std::move(v));
}

int SpinConfiguration::product(std::span<const int> sites) const {
  int s = 1;
  for (int i : sites) s *= values_.at(i);
  return s;
}

std::uint64_t basis_mask(int n_sites, std::span<const int> sites) {
  std::uint64_t m = 0;
  for (int s : sites) {
    if (s < 0 || s >= n_sites) {
      throw ConfigError("site index " + std::to_string(s) + " out of range [0," +
                        std::to_string(n_sites) + ")");
    }
    m ^= std::uint64_t{1} << (n_sites - 1 - s);
  }
  return m;
}

void add_pauli_string(ComplexMatrix& m, std::uint64_t mask, Axis w, Complex coeff) {
  const auto dim = static_cast<std::uint64_t>(m.rows());
  switch (w) {
    case Axis::z:
      for (std::uint64_t b = 0; b < dim; ++b) {
        const double sign = (std::popcount(b & mask) & 1) ? -1.0 : 1.0;
        m(b, b) += coeff * sign;
      }
      break;
    case Axis::x:
      for (std::uint64_t b = 0; b < dim; ++b) m(b ^ mask, b) += coeff;
      break;
    case Axis::y: {
      // sigma^y |b> = i (-1)^b |1-b> on each factor.
      static constexpr Complex kPhase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
      const Complex phase = coeff * kPhase[std::popcount(mask) & 3];
      for (std::uint64_t b = 0; b < dim; ++b) {
        const double sign = (std::popcount(b & mask) & 1) ? -1.0 : 1.0;
        m(b ^ mask, b) += phase * sign;
      }
      break;
    }
  }
}

DenseOperator pauli_product(int n_sites, std::span<const int> sites, Axis w) {
  check_sites(n_sites);
  const std::uint64_t mask = basis_mask(n_sites, sites);
  ComplexMatrix m = ComplexMatrix::Zero(dimension(n_sites), dimension(n_sites));
  add_pauli_string(m, mask, w, 1.0);
  return DenseOperator(n_sites, std::move(m), true);
}

DenseOperator pauli_product(int n_sites, std::initializer_list<int> sites, Axis w) {
  return pauli_product(n_sites, std::span<const int>(sites.begin(), sites.size()), w);
}

DenseOperator pauli_site(int n_sites, int site, Axis w) {
  return pauli_product(n_sites, std::span<const int>(&site, 1), w);
}

DenseOperator gauge_unitary(int n_sites, Axis u, const SpinConfiguration& tau) {
  if (tau.size() != n_sites) throw ConfigError("spin configuration length does not match site count");
  std::vector<int> flipped;
  for (int i = 0; i < n_sites; ++i) {
    if (tau[i] == -1) flipped.push_back(i);
  }
  return pauli_product(n_sites, flipped, u);
}

DenseOperator global_flip(int n_sites, Axis w) {
  std::vector<int> all(n_sites);
  for (int i = 0; i < n_sites; ++i) all[i] = i;
  return pauli_product(n_sites, all, w);
}

double max_norm(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double max_norm(const DenseOperator& op) { return max_norm(op.matrix()); }

DenseOperator commutator(const DenseOperator& a, const DenseOperator& b) {
  return DenseOperator(a.sites(), a.matrix() * b.matrix() - b.matrix() * a.matrix(), false);
}

}  // namespace xyzglass
