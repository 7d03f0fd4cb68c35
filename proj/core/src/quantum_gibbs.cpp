#include "xyzglass/quantum_gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace xyzglass {

DenseOperator build_hamiltonian(const Model& model, const DisorderSample& sample) {
  const int n = model.sites();
  if (n > kQuantumSiteCap) {
    throw CapacityError("Hamiltonian on " + std::to_string(n) + " sites exceeds the quantum site cap of " +
                        std::to_string(kQuantumSiteCap));
  }
  if (sample.couplings.size() != model.families.size()) {
    throw ConfigError("disorder sample does not match the bond families");
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  for (std::size_t f = 0; f < model.families.size(); ++f) {
    const auto& fam = model.families[f];
    if (sample.couplings[f].size() != fam.size()) {
      throw ConfigError("disorder sample does not match the bond families");
    }
    for (std::size_t b = 0; b < fam.size(); ++b) {
      const std::uint64_t mask = basis_mask(n, fam.bonds[b]);
      for (Axis w : kAxes) {
        const double j = sample.couplings[f][b][index(w)];
        if (j != 0.0) add_pauli_string(h, mask, w, -j);
      }
    }
  }
  // Exact Hermiticity; the y strings are assembled entry by entry.
  h = 0.5 * (h + h.adjoint()).eval();
  return DenseOperator(n, std::move(h), true);
}

Spectrum spectral_decompose(const DenseOperator& h) {
  if (!h.hermitian()) throw DomainError("spectral decomposition requires a Hermitian operator");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) throw DomainError("eigensolver did not converge");
  Spectrum s;
  s.energies = solver.eigenvalues();
  s.vectors = solver.eigenvectors();
  s.sites = h.sites();

  const double scale = std::max(1.0, max_norm(h.matrix()));
  const ComplexMatrix recon = s.vectors * s.energies.cast<Complex>().asDiagonal() * s.vectors.adjoint();
  if (max_norm(recon - h.matrix()) >= 1e-10 * scale) {
    throw DomainError("eigendecomposition failed the reconstruction check");
  }
  const ComplexMatrix gram = s.vectors.adjoint() * s.vectors;
  if (max_norm(gram - ComplexMatrix::Identity(s.dim(), s.dim())) >= 1e-10) {
    throw DomainError("eigenvectors failed the orthonormality check");
  }
  return s;
}

ThermalState::ThermalState(std::shared_ptr<const Spectrum> spectrum, double beta)
    : spectrum_(std::move(spectrum)), beta_(beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw DomainError("inverse temperature must be finite and >= 0");
  const auto& e = spectrum_->energies;
  const double e_min = e.minCoeff();
  weights_ = (-beta * (e.array() - e_min)).exp().matrix();
  const double sum = weights_.sum();
  log_z_ = -beta * e_min + std::log(sum);
  probs_ = weights_ / sum;
}

EigenbasisOperator ThermalState::rotate(const DenseOperator& a) const {
  if (a.dim() != spectrum_->dim()) throw ConfigError("operator dimension does not match the state");
  const auto& v = spectrum_->vectors;
  return {v.adjoint() * a.matrix() * v};
}

ThermalState thermal_state(const DenseOperator& h, double beta) {
  return ThermalState(std::make_shared<const Spectrum>(spectral_decompose(h)), beta);
}

ThermalState thermal_state(const Model& model, const DisorderSample& sample, double beta) {
  return thermal_state(build_hamiltonian(model, sample), beta);
}

namespace {

void check_dim(const ThermalState& s, const ComplexMatrix& m) {
  if (m.rows() != s.spectrum().dim() || m.cols() != s.spectrum().dim()) {
    throw ConfigError("operator dimension does not match the state");
  }
}

double real_checked(Complex c) {
  if (std::abs(c.imag()) >= 1e-10 * std::max(1.0, std::abs(c.real()))) {
    throw DomainError("expectation of a Hermitian observable has an imaginary part");
  }
  return c.real();
}

double degeneracy_tolerance(const Spectrum& s) {
  const double range = s.energies.maxCoeff() - s.energies.minCoeff();
  return 1e-9 * std::max(1.0, range);
}

}  // namespace

double gibbs_expectation(const ThermalState& state, const EigenbasisOperator& a) {
  check_dim(state, a.m);
  Complex acc = 0.0;
  const auto& p = state.probabilities();
  for (Eigen::Index n = 0; n < p.size(); ++n) acc += p[n] * a.m(n, n);
  return real_checked(acc);
}

double gibbs_expectation(const ThermalState& state, const DenseOperator& a) {
  if (a.dim() != state.spectrum().dim()) throw ConfigError("operator dimension does not match the state");
  // Only the diagonal of V^dagger A V is needed.
  const auto& v = state.spectrum().vectors;
  const ComplexMatrix av = a.matrix() * v;
  Complex acc = 0.0;
  const auto& p = state.probabilities();
  for (Eigen::Index n = 0; n < p.size(); ++n) acc += p[n] * v.col(n).dot(av.col(n));
  return real_checked(acc);
}

double duhamel_kernel(double beta, double e_m, double e_n, double degeneracy_tol) {
  const double lo = std::min(e_m, e_n);
  const double gap = std::abs(e_m - e_n);
  if (beta == 0.0) return 1.0;
  if (gap < degeneracy_tol) return std::exp(-0.5 * beta * (e_m + e_n));
  const double x = beta * gap;
  return std::exp(-beta * lo) * (-std::expm1(-x)) / x;
}

double duhamel(const ThermalState& state, const EigenbasisOperator& a, const EigenbasisOperator& b) {
  check_dim(state, a.m);
  check_dim(state, b.m);
  const auto& spec = state.spectrum();
  const double e_min = spec.energies.minCoeff();
  const double tol = degeneracy_tolerance(spec);
  const double norm = state.shifted_weights().sum();
  const Eigen::Index dim = spec.dim();
  Complex acc = 0.0;
  for (Eigen::Index n = 0; n < dim; ++n) {
    const double en = spec.energies[n] - e_min;
    for (Eigen::Index m = 0; m < dim; ++m) {
      const Complex ab = a.m(m, n) * b.m(n, m);
      if (ab == Complex(0.0)) continue;
      acc += ab * duhamel_kernel(state.beta(), spec.energies[m] - e_min, en, tol);
    }
  }
  return real_checked(acc / norm);
}

double duhamel(const ThermalState& state, const DenseOperator& a, const DenseOperator& b) {
  return duhamel(state, state.rotate(a), state.rotate(b));
}

double truncated_duhamel(const ThermalState& state, const EigenbasisOperator& a,
                         const EigenbasisOperator& b) {
  return duhamel(state, a, b) - gibbs_expectation(state, a) * gibbs_expectation(state, b);
}

double truncated_duhamel(const ThermalState& state, const DenseOperator& a, const DenseOperator& b) {
  return truncated_duhamel(state, state.rotate(a), state.rotate(b));
}

double free_energy_density(const ThermalState& state, int volume) {
  if (volume <= 0) throw ConfigError("volume must be positive");
  return state.log_z() / volume;
}

std::vector<DenseOperator> site_operators(int n_sites, Axis w) {
  std::vector<DenseOperator> ops;
  ops.reserve(n_sites);
  for (int i = 0; i < n_sites; ++i) ops.push_back(pauli_site(n_sites, i, w));
  return ops;
}

double order_expectation(const ThermalState& state, Axis w) {
  const int n = state.sites();
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += gibbs_expectation(state, pauli_site(n, i, w));
  return acc / n;
}

double derivative_identity_residual(const Model& model, const DisorderSample& sample, double beta,
                                    const DenseOperator& f, Axis w, double h) {
  if (!(h > 0.0)) throw DomainError("finite-difference step must be positive");
  const int fi = model.family_index(1);
  if (fi < 0) throw ConfigError("derivative identity needs a p = 1 field family");

  auto shifted = [&](double delta) {
    DisorderSample s = sample;
    for (auto& j : s.couplings[fi]) j[index(w)] += delta;
    return gibbs_expectation(thermal_state(model, s, beta), f);
  };
  const double derivative = (shifted(h) - shifted(-h)) / (2.0 * h);

  const ThermalState state = thermal_state(model, sample, beta);
  const int n = model.sites();
  ComplexMatrix o = ComplexMatrix::Zero(state.spectrum().dim(), state.spectrum().dim());
  for (int i = 0; i < n; ++i) add_pauli_string(o, basis_mask(n, std::span<const int>(&i, 1)), w, 1.0 / n);
  const DenseOperator order(n, std::move(o), true);
  const double response = beta * n * truncated_duhamel(state, f, order);
  return std::abs(derivative - response);
}

double z2_commutator_norm(const DenseOperator& h, Axis w) {
  return max_norm(commutator(h, global_flip(h.sites(), w)));
}

}  // namespace xyzglass
