#include "cli/commands.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "cli/report.hpp"

namespace xyzglass::cli {

namespace {

std::string pass_line(bool pass, const std::string& what) { return std::string(pass ? "PASS " : "FAIL ") + what; }

std::string format_double(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

/// Sample 0 of the seed stream, used for the optional CSV dumps.
void add_sample_csv(const RunConfig& cfg, const Model& model, CommandResult& res) {
  if (!cfg.csv.disorder && !cfg.csv.correlations) return;
  const auto sample = sample_disorder(model, cfg.plan.seed, 0);
  if (cfg.csv.disorder) {
    std::ostringstream os;
    os << "p,bond,sites,axis,value\n";
    for (std::size_t f = 0; f < model.families.size(); ++f) {
      for (std::size_t b = 0; b < model.families[f].size(); ++b) {
        std::string sites;
        for (int s : model.families[f].bonds[b]) sites += (sites.empty() ? "" : " ") + std::to_string(s);
        for (Axis a : kAxes) {
          os << model.families[f].p << ',' << b << ',' << sites << ',' << axis_name(a) << ','
             << format_double(sample.couplings[f][b][index(a)]) << '\n';
        }
      }
    }
    res.csv.emplace_back("disorder", os.str());
  }
  if (cfg.csv.correlations) {
    const auto cm = nishimori_classical_model(model, nishimori_transform(model, sample, cfg.gauge_axis));
    const auto corr = classical_correlation_matrix(cm, cfg.plan.threads);
    std::ostringstream os;
    os << "i,j,tau_i_tau_j\n";
    for (Eigen::Index i = 0; i < corr.rows(); ++i) {
      for (Eigen::Index j = 0; j < corr.cols(); ++j) os << i << ',' << j << ',' << format_double(corr(i, j)) << '\n';
    }
    res.csv.emplace_back("correlations", os.str());
  }
}

json order_row(double param, const OrderParameters& op) {
  json j;
  j["parameter"] = param;
  for (Axis a : kAxes) {
    j["m"][std::string(axis_name(a))] = estimate_json(op.m[index(a)], std::nullopt);
    j["q"][std::string(axis_name(a))] = estimate_json(op.q[index(a)], std::nullopt);
  }
  j["psi"] = estimate_json(op.free_energy, std::nullopt);
  return j;
}

}  // namespace

CommandResult verify_identities(const RunConfig& cfg) {
  const Ensemble ens = cfg.ensemble();
  CommandResult res;
  json runs = json::array();
  for (double beta : cfg.betas) {
    const IdentityQuery q{cfg.observables.x, cfg.observables.y, cfg.observables.z, cfg.observables.w,
                          cfg.gauge_axis, beta};
    json checks = json::array();
    for (const auto& c : lemma_suite(ens, q)) {
      checks.push_back(identity_json(c));
      res.pass = res.pass && c.pass;
      std::ostringstream line;
      line << c.name << " beta=" << beta << " residual=" << c.residual.mean;
      if (c.residual.method == Method::mc) line << " z=" << c.residual.z_score();
      res.summary.push_back(pass_line(c.pass, line.str()));
    }
    runs.push_back({{"beta", beta}, {"checks", checks}});
  }
  res.results["identities"] = runs;
  add_sample_csv(cfg, ens.model, res);
  return res;
}

CommandResult verify_bounds(const RunConfig& cfg) {
  const Ensemble ens = cfg.ensemble();
  const Axis u = cfg.gauge_axis;
  const Axis w = cfg.observables.w;
  const Axis v = cfg.observables.v;
  CommandResult res;
  json runs = json::array();
  for (double beta : cfg.betas) {
    json entry;
    entry["beta"] = beta;
    for (const auto& chain :
         {magnetization_bound_check(ens, beta, w, u), susceptibility_bound_check(ens, beta, v, w, u)}) {
      entry["chains"].push_back(chain_json(chain));
      res.pass = res.pass && chain.pass;
      std::ostringstream line;
      line << chain.name << " beta=" << beta << " lhs=" << chain.lhs.mean << " rhs=" << chain.rhs.mean;
      res.summary.push_back(pass_line(chain.pass, line.str()));
    }
    if (cfg.bounds.a2) {
      const auto a2 = a2_nonlinear_susceptibility(ens, beta, v, w, cfg.bounds.a2_step);
      json m = json::array();
      for (const auto& r : a2.magnetization) m.push_back(estimate_json(r, std::nullopt));
      entry["a2"] = {{"step", a2.step},
                     {"third_difference", estimate_json(a2.third_difference, std::nullopt)},
                     {"second_difference", estimate_json(a2.second_difference, std::nullopt)},
                     {"magnetization", m}};
    }
    runs.push_back(entry);
  }
  res.results["bounds"] = runs;
  if (cfg.bounds.a1) {
    const auto a1 = a1_sum(ens, u);
    res.results["a1"] = {{"value", estimate_json(a1.value, std::nullopt)},
                         {"clipped", a1.clips.clipped},
                         {"clip_total", a1.clips.total},
                         {"clip_ok", a1.clip_ok}};
  }
  add_sample_csv(cfg, ens.model, res);
  return res;
}

CommandResult order_params(const RunConfig& cfg) {
  CommandResult res;
  Ensemble ens = cfg.ensemble();
  std::ostringstream csv;
  csv << "parameter,m_x,m_y,m_z,q_x,q_y,q_z,psi,m_x_se,m_y_se,m_z_se,q_x_se,q_y_se,q_z_se,psi_se\n";
  json rows = json::array();
  for (double value : cfg.order.values) {
    double beta = value;
    if (cfg.order.kind == "mu1") {
      beta = cfg.order.beta;
      bool found = false;
      for (auto& t : ens.model.params.mutable_terms()) {
        if (t.p == 1) {
          t.mean[index(cfg.observables.w)] = value;
          found = true;
        }
      }
      if (!found) throw ConfigError("order_params: a mu1 sweep needs a p = 1 coupling entry");
    }
    const auto op = finite_size_order_parameters(ens, beta);
    rows.push_back(order_row(value, op));
    csv << format_double(value);
    for (const auto& r : op.m) csv << ',' << format_double(r.mean);
    for (const auto& r : op.q) csv << ',' << format_double(r.mean);
    csv << ',' << format_double(op.free_energy.mean);
    for (const auto& r : op.m) csv << ',' << format_double(r.std_error);
    for (const auto& r : op.q) csv << ',' << format_double(r.std_error);
    csv << ',' << format_double(op.free_energy.std_error) << '\n';
  }
  res.results["order_params"] = {{"sweep", cfg.order.kind}, {"rows", rows}};
  res.csv.emplace_back("order_params", csv.str());
  res.summary.push_back("INFO order parameters at " + std::to_string(cfg.order.values.size()) + " points");
  return res;
}

CommandResult phase_region(const RunConfig& cfg) {
  if (!cfg.region.beta_t) {
    throw ConfigError("phase_region.beta_t must be supplied (the triple point is an external input)");
  }
  const double beta_t = *cfg.region.beta_t;
  CommandResult res;
  json points = json::array();
  for (const auto& p : cfg.region.points) {
    const RegionQuery q{p.delta, p.mu, beta_t};
    const auto m = region_membership(q);
    json b2;
    for (Axis a : kAxes) b2[std::string(axis_name(a))] = {{"value", beta2(q, a)}, {"method", "exact"}, {"tolerance", nullptr}};
    points.push_back({{"mu", p.mu},
                      {"delta", p.delta},
                      {"ratio", q.ratios()},
                      {"beta2", b2},
                      {"in_Sx", m.in_axis[0]},
                      {"in_Sy", m.in_axis[1]},
                      {"in_Sz", m.in_axis[2]},
                      {"in_union", m.in_union}});
    std::ostringstream line;
    line << "point ratio=(" << q.ratios()[0] << "," << q.ratios()[1] << "," << q.ratios()[2]
         << ") in_union=" << (m.in_union ? "true" : "false");
    res.summary.push_back("INFO " + line.str());
  }
  res.results["beta_t"] = beta_t;
  res.results["points"] = points;
  if (cfg.region.grid) {
    const auto rows = sample_region(*cfg.region.grid, beta_t, cfg.plan.threads);
    std::ostringstream os;
    write_region_csv(os, rows);
    std::int64_t in_union = 0;
    for (const auto& r : rows) in_union += r.membership.in_union ? 1 : 0;
    res.results["grid"] = {{"rows", rows.size()}, {"in_union", in_union}};
    res.csv.emplace_back("region", os.str());
    res.summary.push_back("INFO grid rows=" + std::to_string(rows.size()) + " in_union=" + std::to_string(in_union));
  }
  return res;
}

}  // namespace xyzglass::cli
