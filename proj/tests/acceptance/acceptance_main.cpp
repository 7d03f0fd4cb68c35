// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria (0 when everything holds).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli/checks.hpp"
#include "cli/config.hpp"
#include "cli/run.hpp"
#include "xyzglass/xyzglass.hpp"

namespace fs = std::filesystem;
using namespace xyzglass;
using namespace xyzglass::cli;

namespace {

const std::string kConfigs = XYZGLASS_CONFIG_DIR;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

Verdict from_outcome(const CheckOutcome& o) {
  return {o.pass, std::to_string(o.instances) + " instances, max error " + fmt(o.max_error) + " < " +
                      fmt(o.tolerance)};
}

Ensemble ensemble_of(const std::string& name) {
  auto cfg = load_config(kConfigs + "/" + name);
  cfg.plan.threads = resolve_threads(0);
  return cfg.ensemble();
}

IdentityQuery query_of(const std::string& name) {
  const auto cfg = load_config(kConfigs + "/" + name);
  return {cfg.observables.x, cfg.observables.y, cfg.observables.z, cfg.observables.w, cfg.gauge_axis,
          cfg.betas.front()};
}

Verdict lemma_quadrature() {
  double worst = 0.0;
  bool pass = true;
  int checks = 0;
  for (const char* name : {"identities_1site_quadrature.json", "identities_2site_quadrature.json"}) {
    const auto ens = ensemble_of(name);
    if (ens.plan.method != Method::quadrature) return {false, std::string(name) + " is not a quadrature config"};
    if (make_quadrature_spec(ens.model, ens.plan.nodes_per_dim).dims.size() > 6) {
      return {false, std::string(name) + " has more than 6 random dims"};
    }
    for (const auto& c : lemma_suite(ens, query_of(name))) {
      worst = std::max(worst, std::abs(c.residual.mean));
      pass = pass && std::abs(c.residual.mean) < 1e-8;
      ++checks;
    }
  }
  return {pass, std::to_string(checks) + " residuals, max " + fmt(worst) + " < 1e-8"};
}

Verdict lemma_monte_carlo() {
  double worst = 0.0;
  bool pass = true;
  int retries = 0, checks = 0;
  for (const char* name : {"identities_chain2_mc.json", "identities_chain4_mc.json"}) {
    const auto ens = ensemble_of(name);
    if (ens.plan.method != Method::mc || ens.plan.n_samples < 100000) {
      return {false, std::string(name) + " must use mc with n >= 1e5"};
    }
    for (const auto& c : lemma_suite(ens, query_of(name))) {
      const double z = c.residual.std_error > 0.0 ? std::abs(c.residual.z_score()) : 0.0;
      worst = std::max(worst, z);
      pass = pass && c.pass;
      retries += c.retries;
      ++checks;
    }
  }
  return {pass, std::to_string(checks) + " residuals, max |z| " + fmt(worst) + " < 4, retries " +
                    std::to_string(retries)};
}

Verdict bound_chains() {
  bool pass = true;
  int chains = 0;
  std::int64_t pair_violations = 0;
  double worst_pair = 0.0;
  for (const char* name : {"bounds_chain3_mc.json", "bounds_ring4_mc.json", "bounds_square_mc.json"}) {
    auto cfg = load_config(kConfigs + "/" + name);
    cfg.plan.threads = resolve_threads(0);
    const auto ens = cfg.ensemble();
    for (double beta : cfg.betas) {
      const auto m = magnetization_bound_check(ens, beta, cfg.observables.w, cfg.gauge_axis);
      const auto s = susceptibility_bound_check(ens, beta, cfg.observables.v, cfg.observables.w, cfg.gauge_axis);
      pass = pass && m.pass && s.pass;
      pair_violations += s.pair_violations;
      worst_pair = std::max(worst_pair, s.max_pair_magnitude);
      chains += 2;
    }
  }
  // infinite temperature on a deterministic grid: both bounded sides vanish
  const auto ens = ensemble_of("identities_1site_quadrature.json");
  const auto m0 = magnetization_bound_check(ens, 0.0, Axis::z, Axis::x);
  const auto s0 = susceptibility_bound_check(ens, 0.0, Axis::y, Axis::z, Axis::x);
  const bool exact = m0.pass && s0.pass && std::abs(m0.lhs.mean) < 1e-15 && s0.lhs.mean == 0.0;
  return {pass && exact && pair_violations == 0,
          std::to_string(chains) + " chains, beta=0 exact " + (exact ? "yes" : "no") + ", max |(s;s)| " +
              fmt(worst_pair) + " <= 2"};
}

Verdict z2_symmetry() {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> g;
  double worst_sym = 0.0, weakest_violation = INFINITY;
  int sym = 0, broken = 0;
  for (int t = 0; t < 60; ++t) {
    const Axis w = kAxes[t % 3];
    const int n = 2 + t % 3;
    Model m;
    m.lattice = build_lattice(1, n, kQuantumSiteCap);
    std::vector<CouplingTerm> terms;
    for (int p = 1; p <= std::min(n, 3); ++p) {
      CouplingTerm c{p, {g(rng), g(rng), g(rng)}, {1.0, 1.0, 1.0}};
      if (p % 2 == 1 && t % 2 == 0) {
        // symmetric instance: odd p only along w
        for (Axis a : kAxes) {
          if (a != w) c.mean[index(a)] = c.stddev[index(a)] = 0.0;
        }
      }
      terms.push_back(c);
      InteractionShape s{p, {}};
      for (int k = 0; k < p; ++k) s.offsets.push_back({k});
      m.families.push_back(generate_bonds(m.lattice, s, Boundary::open));
    }
    m.params = CouplingParams(terms);
    const double norm = z2_commutator_norm(build_hamiltonian(m, sample_disorder(m, 5, t)), w);
    if (z2_symmetric_in_law(m.params, w)) {
      worst_sym = std::max(worst_sym, norm);
      ++sym;
    } else {
      weakest_violation = std::min(weakest_violation, norm);
      ++broken;
    }
  }
  return {sym > 0 && broken > 0 && worst_sym < 1e-12 && weakest_violation > 1e-3,
          std::to_string(sym) + " symmetric (max " + fmt(worst_sym) + " < 1e-12), " + std::to_string(broken) +
              " violating (min " + fmt(weakest_violation) + " > 1e-3)"};
}

Verdict phase_region_properties(const fs::path& scratch) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> r(-2.0, 2.0), d(0.1, 3.0);
  bool ok = true;
  const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (int t = 0; t < 2000; ++t) {
    const AxisTriple ratio{r(rng), r(rng), r(rng)};
    const double bt = 0.2 + std::abs(r(rng));
    const auto base = region_membership(RegionQuery{{1, 1, 1}, ratio, bt});
    for (const auto& p : perms) {
      const auto m = region_membership(RegionQuery{{1, 1, 1}, {ratio[p[0]], ratio[p[1]], ratio[p[2]]}, bt});
      for (int k = 0; k < 3; ++k) ok = ok && m.in_axis[k] == base.in_axis[p[k]];
    }
    const AxisTriple delta{d(rng), d(rng), d(rng)};
    const auto scaled = region_membership(
        RegionQuery{delta, {ratio[0] * delta[0], ratio[1] * delta[1], ratio[2] * delta[2]}, bt});
    ok = ok && scaled.in_axis == base.in_axis;
  }
  for (int axis = 0; axis < 3; ++axis) {
    int flips = 0;
    bool prev = true;
    for (int k = 0; k <= 1000; ++k) {
      AxisTriple ratio{0.1, 0.2, 0.15};
      ratio[axis] = 0.005 * k;
      const bool now = region_membership(RegionQuery{{1, 1, 1}, ratio, 1.0}).in_union;
      flips += now != prev;
      prev = now;
    }
    ok = ok && flips == 1;
  }
  const auto origin = region_membership(RegionQuery{{1, 1, 1}, {0, 0, 0}, 1.0});
  const auto outside = region_membership(RegionQuery{{1, 1, 1}, {0.75, 0.75, 0.75}, 1.0});
  const auto one = region_membership(RegionQuery{{1, 1, 1}, {0.1, 0.8, 0.8}, 1.0});
  ok = ok && origin.in_union && origin.in_axis[0] && origin.in_axis[1] && origin.in_axis[2];
  ok = ok && !outside.in_union;
  ok = ok && one.in_union && (one.in_axis[0] + one.in_axis[1] + one.in_axis[2]) == 1;

  const auto t0 = std::chrono::steady_clock::now();
  std::ostringstream out, err;
  const int code = run({"phase-region", "--config", kConfigs + "/phase_region_grid.json", "--out",
                        (scratch / "grid").string()},
                       out, err);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::size_t lines = 0;
  for (const auto& e : fs::recursive_directory_iterator(scratch / "grid")) {
    if (e.path().filename() == "region.csv") {
      std::ifstream in(e.path());
      std::string line;
      while (std::getline(in, line)) ++lines;
    }
  }
  const bool grid_ok = code == 0 && lines == 125001 && secs < 10.0;
  return {ok && grid_ok, std::string("properties ") + (ok ? "hold" : "violated") + ", 50^3 export " + fmt(secs) +
                             " s, " + std::to_string(lines) + " lines"};
}

Verdict determinism(const fs::path& scratch) {
  auto strip = [](const fs::path& p) {
    std::ifstream in(p);
    std::string text, line;
    while (std::getline(in, line)) {
      if (line.find("\"generated_at\"") == std::string::npos) text += line + "\n";
    }
    return text;
  };
  bool ok = true;
  int compared = 0;
  for (const char* name : {"identities_2site_quadrature.json", "order_params_beta.json", "bounds_chain3_mc.json"}) {
    const fs::path dir = scratch / ("det-" + std::string(name));
    const std::string cmd = std::string(name).rfind("bounds", 0) == 0      ? "verify-bounds"
                            : std::string(name).rfind("order", 0) == 0 ? "order-params"
                                                                       : "verify-identities";
    std::ostringstream out, err;
    const int a = run({cmd, "--config", kConfigs + "/" + name, "--out", dir.string(), "--threads", "1"}, out, err);
    const int b = run({cmd, "--config", kConfigs + "/" + name, "--out", dir.string(), "--threads", "2"}, out, err);
    std::vector<fs::path> reports;
    for (const auto& e : fs::recursive_directory_iterator(dir)) {
      if (e.path().extension() == ".json") reports.push_back(e.path());
    }
    ok = ok && a == 0 && b == 0 && reports.size() == 2 && strip(reports[0]) == strip(reports[1]);
    ++compared;
  }
  return {ok, std::to_string(compared) + " config pairs byte-identical modulo timestamp"};
}

}  // namespace

int main() {
  const fs::path scratch = fs::temp_directory_path() / "xyzglass_acceptance";
  fs::remove_all(scratch);
  fs::create_directories(scratch);

  struct Criterion {
    int id;
    const char* name;
    double budget;  // seconds
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "operator_algebra", 30, [] { return from_outcome(check_operator_algebra(200, 1)); }},
      {2, "change_of_variables", 5, [] { return from_outcome(check_change_of_variables(100000, 2)); }},
      {3, "density_covariance", 5, [] { return from_outcome(check_density_covariance(100000, 3)); }},
      {4, "lemma_quadrature", 600, lemma_quadrature},
      {5, "lemma_monte_carlo", 1200, lemma_monte_carlo},
      {6, "duhamel_vs_simpson", 60, [] { return from_outcome(check_duhamel_simpson(50, 6, 200)); }},
      {7, "derivative_identity", 60, [] { return from_outcome(check_derivative_identity(20, 7, 1e-4)); }},
      {8, "quantum_classical_reduction", 120, [] { return from_outcome(check_classical_reduction(20, 8, 10)); }},
      {9, "bound_chains", 1800, bound_chains},
      {10, "z2_symmetry", 60, z2_symmetry},
      {11, "phase_region", 60, [&] { return phase_region_properties(scratch); }},
      {12, "determinism", 600, [&] { return determinism(scratch); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.budget;
    const bool pass = v.pass && in_time;
    failed += pass ? 0 : 1;
    std::printf("%s %2d %-28s %s [%.2f s / %.0f s%s]\n", pass ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str(), secs,
                c.budget, in_time ? "" : " over budget");
    std::fflush(stdout);
  }
  fs::remove_all(scratch);
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed;
}
