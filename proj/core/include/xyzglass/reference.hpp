#pragma once

// Reference evaluations that avoid the spectral path used by the library:
// matrix exponentials by scaling and squaring of a Taylor series, imaginary
// time integrals by composite Simpson, classical sums by direct enumeration.

#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace xyzglass::reference {

inline Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a) {
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Eigen::MatrixXcd scaled = a / std::ldexp(1.0, squarings);
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(a.rows(), a.cols());
  Eigen::MatrixXcd sum = term;
  for (int k = 1; k <= 30; ++k) {
    term = (term * scaled) / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = (sum * sum).eval();
  return sum;
}

/// Tr(A e^{-beta H}) / Tr e^{-beta H}.
inline double gibbs(const Eigen::MatrixXcd& h, double beta, const Eigen::MatrixXcd& a) {
  const Eigen::MatrixXcd rho = expm(-beta * h);
  return ((a * rho).trace() / rho.trace()).real();
}

/// int_0^1 dt <e^{t beta H} A e^{-t beta H} B> by composite Simpson on
/// `intervals` (even) sub-intervals.
inline double duhamel_simpson(const Eigen::MatrixXcd& h, double beta, const Eigen::MatrixXcd& a,
                              const Eigen::MatrixXcd& b, int intervals = 200) {
  const Eigen::MatrixXcd rho = expm(-beta * h);
  const std::complex<double> z = rho.trace();
  const double dt = 1.0 / intervals;
  const Eigen::MatrixXcd step_fwd = expm(dt * beta * h);
  const Eigen::MatrixXcd step_bwd = expm(-dt * beta * h);
  Eigen::MatrixXcd fwd = Eigen::MatrixXcd::Identity(h.rows(), h.cols());
  Eigen::MatrixXcd bwd = fwd;
  double acc = 0.0;
  for (int k = 0; k <= intervals; ++k) {
    const double f = ((fwd * a * bwd * b * rho).trace() / z).real();
    const double c = (k == 0 || k == intervals) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    acc += c * f;
    fwd = (fwd * step_fwd).eval();
    bwd = (bwd * step_bwd).eval();
  }
  return acc * dt / 3.0;
}

/// Classical bond term: site list and weight (beta_p K already multiplied in).
struct Term {
  std::vector<int> sites;
  double weight;
};

/// sum_tau tau_X exp(sum weight tau_Y) / Z by plain enumeration.
inline double classical(int n, const std::vector<Term>& terms, const std::vector<int>& x) {
  double z = 0.0, acc = 0.0;
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << n); ++c) {
    auto spin = [&](int i) { return ((c >> i) & 1U) ? -1.0 : 1.0; };
    double e = 0.0;
    for (const auto& t : terms) {
      double prod = 1.0;
      for (int s : t.sites) prod *= spin(s);
      e += t.weight * prod;
    }
    double obs = 1.0;
    for (int s : x) obs *= spin(s);
    const double w = std::exp(e);
    z += w;
    acc += w * obs;
  }
  return acc / z;
}

}  // namespace xyzglass::reference
