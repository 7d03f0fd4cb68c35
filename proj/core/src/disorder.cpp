#include "xyzglass/disorder.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <string>

namespace xyzglass {

CouplingParams::CouplingParams(std::vector<CouplingTerm> terms, bool even_p_model)
    : terms_(std::move(terms)), even_p_model_(even_p_model) {
  std::sort(terms_.begin(), terms_.end(),
            [](const CouplingTerm& a, const CouplingTerm& b) { return a.p < b.p; });
}

const CouplingTerm& CouplingParams::term(int p) const {
  for (const auto& t : terms_) {
    if (t.p == p) return t;
  }
  throw ConfigError("no coupling parameters for p=" + std::to_string(p));
}

bool CouplingParams::has(int p) const {
  return std::any_of(terms_.begin(), terms_.end(), [p](const CouplingTerm& t) { return t.p == p; });
}

void CouplingParams::validate() const {
  std::set<int> seen;
  for (const auto& t : terms_) {
    if (t.p < 1) throw ConfigError("coupling p must be >= 1");
    if (!seen.insert(t.p).second) throw ConfigError("duplicate coupling entry for p=" + std::to_string(t.p));
    for (Axis a : kAxes) {
      const double d = t.stddev[index(a)];
      const double m = t.mean[index(a)];
      if (!std::isfinite(d) || d < 0.0) {
        throw ConfigError("Delta_" + std::to_string(t.p) + "^" + std::string(axis_name(a)) +
                          " must be finite and >= 0");
      }
      if (!std::isfinite(m)) {
        throw ConfigError("mu_" + std::to_string(t.p) + "^" + std::string(axis_name(a)) + " must be finite");
      }
    }
    if (even_p_model_ && t.p > 1 && t.p % 2 != 0) {
      throw ConfigError("mixed even p-spin model contains odd p=" + std::to_string(t.p));
    }
  }
}

void CouplingParams::validate_gauge_axis(Axis u) const {
  for (const auto& t : terms_) (void)nishimori_beta(*this, t.p, u);
}

void Model::validate() const {
  params.validate();
  if (families.size() != params.terms().size()) {
    throw ConfigError("bond families and coupling parameters cover different p sets");
  }
  for (std::size_t k = 0; k < families.size(); ++k) {
    if (families[k].p != params.terms()[k].p) {
      throw ConfigError("bond family p=" + std::to_string(families[k].p) +
                        " has no matching coupling parameters");
    }
  }
}

int Model::family_index(int p) const {
  for (std::size_t k = 0; k < families.size(); ++k) {
    if (families[k].p == p) return static_cast<int>(k);
  }
  return -1;
}

DisorderSample sample_disorder(const Model& model, std::uint64_t seed, std::uint64_t sample_index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(sample_index),
                    static_cast<std::uint32_t>(sample_index >> 32), 0x9e3779b9U};
  std::mt19937_64 engine(seq);
  std::normal_distribution<double> normal(0.0, 1.0);

  DisorderSample s;
  s.seed = seed;
  s.sample_index = sample_index;
  s.couplings.resize(model.families.size());
  for (std::size_t f = 0; f < model.families.size(); ++f) {
    const auto& term = model.params.terms()[f];
    auto& out = s.couplings[f];
    out.resize(model.families[f].size());
    for (auto& j : out) {
      for (Axis a : kAxes) {
        const double z = normal(engine);
        const double d = term.stddev[index(a)];
        j[index(a)] = d == 0.0 ? term.mean[index(a)] : term.mean[index(a)] + d * z;
      }
    }
  }
  return s;
}

DisorderSample mean_sample(const Model& model) {
  DisorderSample s;
  s.couplings.resize(model.families.size());
  for (std::size_t f = 0; f < model.families.size(); ++f) {
    s.couplings[f].assign(model.families[f].size(), model.params.terms()[f].mean);
  }
  return s;
}

double gaussian_log_density(double j, double mu, double delta) {
  if (!(delta > 0.0)) throw DomainError("Gaussian density needs a positive standard deviation");
  const double r = (j - mu) / delta;
  return -0.5 * r * r - std::log(delta) - 0.5 * std::log(2.0 * std::numbers::pi);
}

namespace {

/// mu/Delta^2 and mu/Delta for one transformed component; zero for an absent one.
struct ComponentRatios {
  double mu_over_var = 0.0;
  double mu_over_sd = 0.0;
  bool absent = false;
};

ComponentRatios component(const CouplingTerm& t, Axis a) {
  const double mu = t.mean[index(a)];
  const double d = t.stddev[index(a)];
  if (d > 0.0) return {mu / (d * d), mu / d, false};
  if (mu == 0.0) return {0.0, 0.0, true};
  throw DomainError("gauge transformation needs Delta_" + std::to_string(t.p) + "^" +
                    std::string(axis_name(a)) + " > 0 (component has mu != 0 and zero width)");
}

}  // namespace

double nishimori_beta(const CouplingParams& params, int p, Axis u) {
  const auto& t = params.term(p);
  const auto [v, w] = other_axes(u);
  const auto cv = component(t, v);
  const auto cw = component(t, w);
  return std::hypot(cv.mu_over_sd, cw.mu_over_sd);
}

NishimoriData nishimori_transform(const Model& model, const DisorderSample& sample, Axis u) {
  NishimoriData out;
  out.u = u;
  const auto [v, w] = other_axes(u);
  const std::size_t nf = model.families.size();
  out.betas.resize(nf);
  out.K.resize(nf);
  out.G.resize(nf);
  for (std::size_t f = 0; f < nf; ++f) {
    const auto& t = model.params.terms()[f];
    const auto cv = component(t, v);
    const auto cw = component(t, w);
    const double beta = std::hypot(cv.mu_over_sd, cw.mu_over_sd);
    out.betas[f] = beta;
    const double dv = t.stddev[index(v)];
    const double dw = t.stddev[index(w)];
    const double mv = t.mean[index(v)];
    const double mw = t.mean[index(w)];
    const auto& js = sample.couplings[f];
    out.K[f].resize(js.size());
    out.G[f].resize(js.size());
    for (std::size_t b = 0; b < js.size(); ++b) {
      const double jv = js[b][index(v)];
      const double jw = js[b][index(w)];
      if (beta > 0.0) {
        out.K[f][b] = (cv.mu_over_var * jv + cw.mu_over_var * jw) / beta;
        out.G[f][b] = (cv.absent || cw.absent) ? 0.0 : (mw * jv - mv * jw) / (beta * dv * dw);
      } else {
        // beta = 0: the rotation is undefined; K - beta and G are taken as the
        // standardized v and w components. beta * K = 0 either way.
        out.K[f][b] = cv.absent ? 0.0 : (jv - mv) / dv;
        out.G[f][b] = cw.absent ? 0.0 : -(jw - mw) / dw;
      }
    }
  }
  return out;
}

DisorderSample gauge_transform_couplings(const Model& model, const DisorderSample& sample,
                                         const SpinConfiguration& tau, Axis u) {
  if (tau.size() != model.sites()) throw ConfigError("spin configuration length does not match lattice");
  DisorderSample out = sample;
  const auto [v, w] = other_axes(u);
  for (std::size_t f = 0; f < model.families.size(); ++f) {
    for (std::size_t b = 0; b < model.families[f].size(); ++b) {
      const int tx = tau.product(model.families[f].bonds[b]);
      out.couplings[f][b][index(v)] *= tx;
      out.couplings[f][b][index(w)] *= tx;
    }
  }
  return out;
}

bool z2_symmetric_in_law(const CouplingParams& params, Axis w) {
  for (const auto& t : params.terms()) {
    if (t.p % 2 == 0) continue;
    for (Axis a : kAxes) {
      if (a == w) continue;
      if (t.mean[index(a)] != 0.0 || t.stddev[index(a)] != 0.0) return false;
    }
  }
  return true;
}

}  // namespace xyzglass
