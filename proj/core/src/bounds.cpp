#include "xyzglass/identities.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace xyzglass {

namespace {

/// Slack for deterministic averages: exact ones get rounding room only.
double deterministic_slack(Method m, const Tolerances& tol) {
  return m == Method::mc ? tol.exact : tol.quadrature;
}

ChainStep inequality(std::string name, const EstimatorResult& lhs, const EstimatorResult& rhs,
                     const Tolerances& tol) {
  ChainStep s;
  s.name = std::move(name);
  s.relation = "<=";
  s.lhs = lhs;
  s.rhs = rhs;
  s.margin = rhs.mean - lhs.mean;
  s.tolerance = tol.z_score * std::hypot(lhs.std_error, rhs.std_error) + deterministic_slack(lhs.method, tol);
  s.pass = s.margin >= -s.tolerance;
  return s;
}

/// Equality checked on the paired residual.
ChainStep equality(std::string name, const EstimatorResult& lhs, const EstimatorResult& rhs,
                   const EstimatorResult& residual, const Tolerances& tol) {
  ChainStep s;
  s.name = std::move(name);
  s.relation = "==";
  s.lhs = lhs;
  s.rhs = rhs;
  s.margin = residual.mean;
  s.tolerance = tol.z_score * residual.std_error + deterministic_slack(residual.method, tol);
  s.pass = std::abs(s.margin) <= s.tolerance;
  return s;
}

EstimatorResult scaled(EstimatorResult r, double k) {
  r.mean *= k;
  r.std_error *= std::abs(k);
  return r;
}

/// |E x| with the standard error of E x.
EstimatorResult absolute(EstimatorResult r) {
  r.mean = std::abs(r.mean);
  return r;
}

/// Sum of several columns as one per-sample series.
std::vector<double> column_sum(const EnsembleTable& t, std::span<const std::size_t> cols) {
  std::vector<double> s(t.rows(), 0.0);
  for (std::size_t c : cols) {
    for (std::size_t r = 0; r < t.rows(); ++r) s[r] += t.at(r, c);
  }
  return s;
}

/// sum_c |E x_c| with a sign-linearized standard error.
EstimatorResult abs_sum(const EnsembleTable& t, std::span<const std::size_t> cols) {
  std::vector<double> influence(t.rows(), 0.0);
  double value = 0.0;
  for (std::size_t c : cols) {
    const double m = t.mean(c);
    value += std::abs(m);
    const double sign = m < 0.0 ? -1.0 : 1.0;
    for (std::size_t r = 0; r < t.rows(); ++r) influence[r] += sign * t.at(r, c);
  }
  EstimatorResult res = t.estimate(influence);
  res.mean = value;
  return res;
}

std::vector<std::size_t> strided(std::size_t first, std::size_t stride, std::size_t count) {
  std::vector<std::size_t> out(count);
  for (std::size_t k = 0; k < count; ++k) out[k] = first + k * stride;
  return out;
}

void finish(ChainReport& r, const Tolerances& tol) {
  r.clip_ok = r.clips.fraction() <= tol.clip_fraction;
  r.pass = r.clip_ok && r.pair_violations == 0;
  for (const auto& s : r.steps) r.pass = r.pass && s.pass;
}

void check_axes(const Ensemble& e, Axis u, std::initializer_list<Axis> observed, double beta) {
  for (Axis a : observed) {
    if (a == u) throw ConfigError("observable axes must differ from the gauge axis u");
  }
  if (!(beta >= 0.0)) throw ConfigError("beta must be >= 0");
  e.model.validate();
  e.model.params.validate_gauge_axis(u);
}

}  // namespace

ChainReport magnetization_bound_check(const Ensemble& ensemble, double beta, Axis w, Axis u) {
  check_axes(ensemble, u, {w}, beta);
  const auto& model = ensemble.model;
  const auto& tol = ensemble.tolerances;
  const int n = model.sites();
  const auto ops = site_operators(n, w);
  std::vector<std::uint64_t> masks(n);
  for (int i = 0; i < n; ++i) masks[i] = std::uint64_t{1} << i;

  // Per site: s, s t, |s t|, |t|, t^2, t with s = <sigma_i^w>, t = <tau_i>_N.
  constexpr std::size_t kStride = 6;
  const auto table = evaluate_ensemble(model, ensemble.plan, kStride * n, [&](const DisorderSample& smp,
                                                                               std::span<double> out) {
    const ThermalState state = thermal_state(model, smp, beta);
    const auto tau =
        classical_averages(nishimori_classical_model(model, nishimori_transform(model, smp, u)), masks).values;
    for (int i = 0; i < n; ++i) {
      const double s = gibbs_expectation(state, ops[i]);
      const double t = tau[i];
      double* o = &out[kStride * i];
      o[0] = s;
      o[1] = s * t;
      o[2] = std::abs(s * t);
      o[3] = std::abs(t);
      o[4] = t * t;
      o[5] = t;
    }
  });

  const double inv_n = 1.0 / n;
  auto cols = [&](std::size_t k) { return strided(k, kStride, n); };
  const auto c_s = cols(0), c_st = cols(1), c_abs_st = cols(2), c_abs_t = cols(3), c_t2 = cols(4), c_t = cols(5);

  ChainReport r;
  r.name = "magnetization_bound";
  const auto mag = scaled(table.estimate(column_sum(table, c_s)), inv_n);
  const auto gauged = scaled(table.estimate(column_sum(table, c_st)), inv_n);
  std::vector<double> diff = column_sum(table, c_s);
  const auto st_sum = column_sum(table, c_st);
  for (std::size_t k = 0; k < diff.size(); ++k) diff[k] -= st_sum[k];
  r.steps.push_back(equality("one_point_identity", mag, gauged, scaled(table.estimate(diff), inv_n), tol));

  const auto abs_mean = scaled(abs_sum(table, c_st), inv_n);
  const auto mean_abs = scaled(table.estimate(column_sum(table, c_abs_st)), inv_n);
  r.steps.push_back(inequality("abs_of_mean_le_mean_of_abs", abs_mean, mean_abs, tol));

  const auto mean_abs_t = scaled(table.estimate(column_sum(table, c_abs_t)), inv_n);
  r.steps.push_back(inequality("quantum_factor_bounded_by_one", mean_abs, mean_abs_t, tol));

  const auto root_t2 = estimate_sqrt_sum(table, c_t2, inv_n, r.clips);
  r.steps.push_back(inequality("cauchy_schwarz", mean_abs_t, root_t2, tol));

  std::vector<double> nd = column_sum(table, c_t2);
  const auto t_sum = column_sum(table, c_t);
  for (std::size_t k = 0; k < nd.size(); ++k) nd[k] -= t_sum[k];
  r.steps.push_back(equality("nishimori_square_identity", scaled(table.estimate(column_sum(table, c_t2)), inv_n),
                             scaled(table.estimate(t_sum), inv_n), scaled(table.estimate(nd), inv_n), tol));

  const auto root_t = estimate_sqrt_sum(table, c_t, inv_n, r.clips);
  r.steps.push_back(inequality("site_bound", mag, root_t, tol));

  const auto jensen = estimate_sqrt_of_sum(table, c_t, inv_n, r.clips);
  r.steps.push_back(inequality("jensen_over_sites", root_t, jensen, tol));

  r.steps.push_back(inequality("magnetization_bound", mag, jensen, tol));
  r.lhs = mag;
  r.rhs = jensen;
  finish(r, tol);
  return r;
}

ChainReport susceptibility_bound_check(const Ensemble& ensemble, double beta, Axis v, Axis w, Axis u) {
  check_axes(ensemble, u, {v, w}, beta);
  const auto& model = ensemble.model;
  const auto& tol = ensemble.tolerances;
  const int n = model.sites();
  const auto ops_w = site_operators(n, w);
  const auto ops_v = site_operators(n, v);
  std::vector<std::uint64_t> masks;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) masks.push_back((std::uint64_t{1} << i) ^ (std::uint64_t{1} << j));
  }
  const std::size_t pairs = static_cast<std::size_t>(n) * n;

  // Columns: S1 = sum c, S2 = sum c t, S3 = sum |c t|, S4 = sum |t|, max|c|,
  // then t_ij^2 and t_ij per pair.
  constexpr std::size_t kHead = 5;
  const auto table = evaluate_ensemble(model, ensemble.plan, kHead + 2 * pairs, [&](const DisorderSample& smp,
                                                                                    std::span<double> out) {
    const ThermalState state = thermal_state(model, smp, beta);
    const auto tau =
        classical_averages(nishimori_classical_model(model, nishimori_transform(model, smp, u)), masks).values;
    std::vector<EigenbasisOperator> rw, rv;
    std::vector<double> mw(n), mv(n);
    for (int i = 0; i < n; ++i) {
      rw.push_back(state.rotate(ops_w[i]));
      rv.push_back(v == w ? rw.back() : state.rotate(ops_v[i]));
      mw[i] = gibbs_expectation(state, rw[i]);
      mv[i] = gibbs_expectation(state, rv[i]);
    }
    double s1 = 0, s2 = 0, s3 = 0, s4 = 0, cmax = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const std::size_t k = static_cast<std::size_t>(i) * n + j;
        const double c = duhamel(state, rw[i], rv[j]) - mw[i] * mv[j];
        const double t = tau[k];
        s1 += c;
        s2 += c * t;
        s3 += std::abs(c * t);
        s4 += std::abs(t);
        cmax = std::max(cmax, std::abs(c));
        out[kHead + k] = t * t;
        out[kHead + pairs + k] = t;
      }
    }
    out[0] = s1;
    out[1] = s2;
    out[2] = s3;
    out[3] = s4;
    out[4] = cmax;
  });

  const double k1 = beta / n;
  const double k2 = 2.0 * beta / n;
  ChainReport r;
  r.name = "susceptibility_bound";

  for (std::size_t row = 0; row < table.rows(); ++row) {
    const double m = table.at(row, 4);
    r.max_pair_magnitude = std::max(r.max_pair_magnitude, m);
    if (m > 2.0 + tol.exact) ++r.pair_violations;
  }

  const auto chi = scaled(absolute(table.estimate_column(0)), k1);
  const auto gauged = scaled(absolute(table.estimate_column(1)), k1);
  r.steps.push_back(equality("duhamel_identity", chi, gauged, scaled(table.estimate_difference(0, 1), k1), tol));
  const auto mean_abs = scaled(table.estimate_column(2), k1);
  r.steps.push_back(inequality("abs_of_mean_le_mean_of_abs", gauged, mean_abs, tol));
  const auto pair_bound = scaled(table.estimate_column(3), k2);
  r.steps.push_back(inequality("truncated_duhamel_le_two", mean_abs, pair_bound, tol));
  const auto sq = strided(kHead, 1, pairs);
  const auto lin = strided(kHead + pairs, 1, pairs);
  const auto root_t2 = estimate_sqrt_sum(table, sq, k2, r.clips);
  r.steps.push_back(inequality("cauchy_schwarz", pair_bound, root_t2, tol));

  const auto sum_sq = column_sum(table, sq);
  auto nd = sum_sq;
  const auto sum_lin = column_sum(table, lin);
  for (std::size_t k = 0; k < nd.size(); ++k) nd[k] -= sum_lin[k];
  r.steps.push_back(equality("nishimori_square_identity", scaled(table.estimate(sum_sq), k2),
                             scaled(table.estimate(sum_lin), k2), scaled(table.estimate(nd), k2), tol));

  const auto bound = estimate_sqrt_sum(table, lin, k2, r.clips);
  r.steps.push_back(inequality("susceptibility_bound", chi, bound, tol));
  r.lhs = chi;
  r.rhs = bound;
  finish(r, tol);
  return r;
}

A1Result a1_sum(const Ensemble& ensemble, Axis u) {
  const auto& model = ensemble.model;
  model.validate();
  model.params.validate_gauge_axis(u);
  const int n = model.sites();
  std::vector<std::uint64_t> masks;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) masks.push_back((std::uint64_t{1} << i) ^ (std::uint64_t{1} << j));
  }
  const auto table = evaluate_ensemble(model, ensemble.plan, masks.size(), [&](const DisorderSample& smp,
                                                                              std::span<double> out) {
    const auto tau =
        classical_averages(nishimori_classical_model(model, nishimori_transform(model, smp, u)), masks).values;
    std::copy(tau.begin(), tau.end(), out.begin());
  });
  A1Result res;
  res.value = estimate_sqrt_sum(table, strided(0, 1, masks.size()), 1.0 / n, res.clips);
  res.clip_ok = res.clips.fraction() <= ensemble.tolerances.clip_fraction;
  return res;
}

A2Result a2_nonlinear_susceptibility(const Ensemble& ensemble, double beta, Axis v, Axis w, double h) {
  if (!(h > 0.0)) throw DomainError("finite-difference step must be positive");
  const auto& model = ensemble.model;
  model.validate();
  const int n = model.sites();
  const int field_family = model.family_index(1);
  if (field_family >= 0) {
    const auto& t = model.params.terms()[field_family];
    for (double d : t.stddev) {
      if (d != 0.0) throw ConfigError("nonlinear susceptibility needs a deterministic field (Delta_1 = 0)");
    }
  }
  const std::array<double, 5> fields = {-2 * h, -h, 0.0, h, 2 * h};
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;

  const auto table = evaluate_ensemble(model, ensemble.plan, fields.size(), [&](const DisorderSample& smp,
                                                                               std::span<double> out) {
    DisorderSample base = smp;
    if (field_family >= 0) {
      for (auto& j : base.couplings[field_family]) j = {0.0, 0.0, 0.0};
    }
    const DenseOperator h0 = build_hamiltonian(model, base);
    for (std::size_t k = 0; k < fields.size(); ++k) {
      ComplexMatrix m = h0.matrix();
      for (int i = 0; i < n; ++i) {
        add_pauli_string(m, basis_mask(n, std::span<const int>(&all[i], 1)), v, -fields[k]);
      }
      out[k] = order_expectation(thermal_state(DenseOperator(n, std::move(m), true), beta), w);
    }
  });

  A2Result res;
  res.step = h;
  for (std::size_t k = 0; k < fields.size(); ++k) res.magnetization[k] = table.estimate_column(k);
  std::vector<double> third(table.rows()), second(table.rows());
  for (std::size_t r = 0; r < table.rows(); ++r) {
    const double mm2 = table.at(r, 0), mm1 = table.at(r, 1), m0 = table.at(r, 2), mp1 = table.at(r, 3),
                 mp2 = table.at(r, 4);
    third[r] = (mp2 - 2.0 * mp1 + 2.0 * mm1 - mm2) / (2.0 * h * h * h);
    second[r] = (mp1 - 2.0 * m0 + mm1) / (h * h);
  }
  res.third_difference = table.estimate(third);
  res.second_difference = table.estimate(second);
  return res;
}

OrderParameters finite_size_order_parameters(const Ensemble& ensemble, double beta) {
  const auto& model = ensemble.model;
  model.validate();
  const int n = model.sites();
  std::array<std::vector<DenseOperator>, 3> ops;
  for (Axis a : kAxes) ops[index(a)] = site_operators(n, a);
  const auto table = evaluate_ensemble(model, ensemble.plan, 7, [&](const DisorderSample& smp,
                                                                    std::span<double> out) {
    const ThermalState state = thermal_state(model, smp, beta);
    for (Axis a : kAxes) {
      double m = 0.0, q = 0.0;
      for (int i = 0; i < n; ++i) {
        const double s = gibbs_expectation(state, ops[index(a)][i]);
        m += s;
        q += s * s;
      }
      out[index(a)] = m / n;
      out[3 + index(a)] = q / n;
    }
    out[6] = free_energy_density(state, n);
  });
  OrderParameters res;
  for (Axis a : kAxes) {
    res.m[index(a)] = table.estimate_column(index(a));
    res.q[index(a)] = table.estimate_column(3 + index(a));
  }
  res.free_energy = table.estimate_column(6);
  return res;
}

}  // namespace xyzglass
