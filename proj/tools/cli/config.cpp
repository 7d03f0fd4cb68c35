#include "cli/config.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace xyzglass::cli {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError(where + ": " + what);
}

void only_keys(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) fail(where, "expected an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : obj.items()) {
    if (!allowed.contains(k)) fail(where, "unknown key '" + k + "'");
  }
}

template <typename T>
T as(const json& v, const std::string& where) {
  try {
    if constexpr (std::is_same_v<T, double>) {
      if (!v.is_number()) fail(where, "expected a number");
    } else if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>) {
      if (!v.is_number_integer()) fail(where, "expected an integer");
    } else if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) fail(where, "expected true or false");
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) fail(where, "expected a string");
    }
    return v.get<T>();
  } catch (const json::exception& e) {
    fail(where, e.what());
  }
}

template <typename T>
T field(const json& obj, const char* key, const std::string& where, T fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  return as<T>(*it, where + "." + key);
}

template <typename T>
std::vector<T> list(const json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected an array");
  std::vector<T> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as<T>(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

AxisTriple triple(const json& v, const std::string& where) {
  const auto xs = list<double>(v, where);
  if (xs.size() != 3) fail(where, "expected three values (x, y, z)");
  return {xs[0], xs[1], xs[2]};
}

Axis axis(const json& obj, const char* key, const std::string& where, Axis fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  return parse_axis(as<std::string>(*it, where + "." + key));
}

json axis_json(Axis a) { return std::string(axis_name(a)); }

GridAxis grid_axis(const json& v, const std::string& where) {
  only_keys(v, where, {"lo", "hi", "count"});
  GridAxis g{field<double>(v, "lo", where, 0.0), field<double>(v, "hi", where, 0.0),
             field<int>(v, "count", where, 1)};
  if (g.count < 1) fail(where + ".count", "must be >= 1");
  return g;
}

void parse_method(const json& m, RunConfig& cfg) {
  only_keys(m, "method", {"kind", "n_samples", "nodes_per_dim", "retry"});
  cfg.plan.method = xyzglass::parse_method(field<std::string>(m, "kind", "method", "mc"));
  cfg.plan.n_samples = field<std::int64_t>(m, "n_samples", "method", 1000);
  cfg.plan.nodes_per_dim = field<int>(m, "nodes_per_dim", "method", 16);
  cfg.allow_retry = field<bool>(m, "retry", "method", true);
  if (cfg.plan.n_samples < 1) fail("method.n_samples", "must be >= 1");
  if (cfg.plan.nodes_per_dim < 2) fail("method.nodes_per_dim", "must be >= 2");
}

void parse_region(const json& r, RunConfig& cfg) {
  only_keys(r, "phase_region", {"beta_t", "points", "grid"});
  if (r.contains("beta_t") && !r["beta_t"].is_null()) cfg.region.beta_t = as<double>(r["beta_t"], "phase_region.beta_t");
  if (r.contains("points")) {
    const auto& pts = r["points"];
    if (!pts.is_array()) fail("phase_region.points", "expected an array");
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const std::string where = "phase_region.points[" + std::to_string(i) + "]";
      only_keys(pts[i], where, {"mu", "delta"});
      RegionPoint p;
      if (pts[i].contains("mu")) p.mu = triple(pts[i]["mu"], where + ".mu");
      if (pts[i].contains("delta")) p.delta = triple(pts[i]["delta"], where + ".delta");
      cfg.region.points.push_back(p);
    }
  }
  if (r.contains("grid") && !r["grid"].is_null()) {
    const auto& g = r["grid"];
    only_keys(g, "phase_region.grid", {"mu_x", "mu_y", "mu_z", "delta"});
    RegionGrid grid;
    const char* keys[3] = {"mu_x", "mu_y", "mu_z"};
    for (int a = 0; a < 3; ++a) {
      if (!g.contains(keys[a])) fail("phase_region.grid", std::string("missing '") + keys[a] + "'");
      grid.mu[a] = grid_axis(g[keys[a]], std::string("phase_region.grid.") + keys[a]);
    }
    if (g.contains("delta")) grid.delta = triple(g["delta"], "phase_region.grid.delta");
    cfg.region.grid = grid;
  }
}

std::vector<InteractionShape> default_shapes(int dim, const std::vector<CouplingTerm>& terms,
                                             const std::vector<InteractionShape>& given) {
  std::vector<InteractionShape> out = given;
  for (const auto& t : terms) {
    bool covered = false;
    for (const auto& s : given) covered = covered || s.p == t.p;
    if (covered) continue;
    if (t.p == 1) {
      out.push_back(single_site_shape(dim));
    } else if (t.p == 2) {
      for (auto& s : nearest_neighbour_shapes(dim)) out.push_back(s);
    } else {
      fail("shapes", "no shape given for p=" + std::to_string(t.p));
    }
  }
  return out;
}

}  // namespace

RunConfig parse_config(const json& doc) {
  only_keys(doc, "config",
            {"lattice", "shapes", "couplings", "even_p_model", "beta", "gauge_axis", "observables", "method",
             "seed", "tolerances", "output", "bounds", "order_params", "phase_region", "selftest"});
  RunConfig cfg;

  if (doc.contains("lattice")) {
    const auto& l = doc["lattice"];
    only_keys(l, "lattice", {"dim", "length", "boundary"});
    cfg.dim = field<int>(l, "dim", "lattice", 1);
    cfg.length = field<int>(l, "length", "lattice", 2);
    cfg.boundary = parse_boundary(field<std::string>(l, "boundary", "lattice", "open").c_str());
    if (cfg.dim < 1) fail("lattice.dim", "must be >= 1");
    if (cfg.length < 1) fail("lattice.length", "must be >= 1");
  }

  if (doc.contains("couplings")) {
    const auto& cs = doc["couplings"];
    if (!cs.is_array() || cs.empty()) fail("couplings", "expected a non-empty array");
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const std::string where = "couplings[" + std::to_string(i) + "]";
      only_keys(cs[i], where, {"p", "mean", "stddev"});
      if (!cs[i].contains("p")) fail(where, "missing 'p'");
      CouplingTerm t;
      t.p = as<int>(cs[i]["p"], where + ".p");
      if (cs[i].contains("mean")) t.mean = triple(cs[i]["mean"], where + ".mean");
      if (cs[i].contains("stddev")) t.stddev = triple(cs[i]["stddev"], where + ".stddev");
      cfg.couplings.push_back(t);
    }
  } else {
    cfg.couplings.push_back({1, {0.0, 0.0, 0.5}, {0.0, 0.0, 1.0}});
  }
  cfg.even_p_model = field<bool>(doc, "even_p_model", "config", false);
  CouplingParams(cfg.couplings, cfg.even_p_model).validate();

  std::vector<InteractionShape> given;
  if (doc.contains("shapes")) {
    const auto& ss = doc["shapes"];
    if (!ss.is_array()) fail("shapes", "expected an array");
    for (std::size_t i = 0; i < ss.size(); ++i) {
      const std::string where = "shapes[" + std::to_string(i) + "]";
      only_keys(ss[i], where, {"p", "offsets"});
      InteractionShape s;
      s.p = field<int>(ss[i], "p", where, 0);
      if (!ss[i].contains("offsets") || !ss[i]["offsets"].is_array()) fail(where, "missing 'offsets' array");
      for (std::size_t k = 0; k < ss[i]["offsets"].size(); ++k) {
        s.offsets.push_back(list<int>(ss[i]["offsets"][k], where + ".offsets[" + std::to_string(k) + "]"));
      }
      s.validate(cfg.dim);
      given.push_back(s);
    }
  }
  cfg.shapes = default_shapes(cfg.dim, cfg.couplings, given);
  for (const auto& s : cfg.shapes) {
    bool used = false;
    for (const auto& t : cfg.couplings) used = used || t.p == s.p;
    if (!used) fail("shapes", "shape for p=" + std::to_string(s.p) + " has no coupling entry");
  }

  if (doc.contains("beta")) {
    const auto& b = doc["beta"];
    cfg.betas = b.is_array() ? list<double>(b, "beta") : std::vector<double>{as<double>(b, "beta")};
    if (cfg.betas.empty()) fail("beta", "expected at least one value");
    for (double x : cfg.betas) {
      if (!(x >= 0.0) || !std::isfinite(x)) fail("beta", "values must be finite and >= 0");
    }
  }
  cfg.gauge_axis = axis(doc, "gauge_axis", "config", Axis::x);

  if (doc.contains("observables")) {
    const auto& o = doc["observables"];
    only_keys(o, "observables", {"x", "y", "z", "w", "v"});
    if (o.contains("x")) cfg.observables.x = list<int>(o["x"], "observables.x");
    if (o.contains("y")) cfg.observables.y = list<int>(o["y"], "observables.y");
    if (o.contains("z")) cfg.observables.z = list<int>(o["z"], "observables.z");
    cfg.observables.w = axis(o, "w", "observables", Axis::z);
    cfg.observables.v = axis(o, "v", "observables", Axis::y);
  }

  if (doc.contains("method")) parse_method(doc["method"], cfg);
  cfg.plan.seed = field<std::uint64_t>(doc, "seed", "config", 1);

  if (doc.contains("tolerances")) {
    const auto& t = doc["tolerances"];
    only_keys(t, "tolerances", {"z_score", "quadrature", "clip_fraction", "exact"});
    auto& tol = cfg.tolerances;
    tol.z_score = field<double>(t, "z_score", "tolerances", tol.z_score);
    tol.quadrature = field<double>(t, "quadrature", "tolerances", tol.quadrature);
    tol.clip_fraction = field<double>(t, "clip_fraction", "tolerances", tol.clip_fraction);
    tol.exact = field<double>(t, "exact", "tolerances", tol.exact);
    for (double x : {tol.z_score, tol.quadrature, tol.clip_fraction, tol.exact}) {
      if (!(x > 0.0)) fail("tolerances", "values must be > 0");
    }
  }

  if (doc.contains("output")) {
    const auto& o = doc["output"];
    only_keys(o, "output", {"dir", "csv"});
    cfg.out_dir = field<std::string>(o, "dir", "output", cfg.out_dir);
    if (o.contains("csv")) {
      only_keys(o["csv"], "output.csv", {"disorder", "correlations"});
      cfg.csv.disorder = field<bool>(o["csv"], "disorder", "output.csv", false);
      cfg.csv.correlations = field<bool>(o["csv"], "correlations", "output.csv", false);
    }
  }

  if (doc.contains("bounds")) {
    const auto& b = doc["bounds"];
    only_keys(b, "bounds", {"a1", "a2", "a2_step"});
    cfg.bounds.a1 = field<bool>(b, "a1", "bounds", true);
    cfg.bounds.a2 = field<bool>(b, "a2", "bounds", false);
    cfg.bounds.a2_step = field<double>(b, "a2_step", "bounds", 1e-2);
    if (!(cfg.bounds.a2_step > 0.0)) fail("bounds.a2_step", "must be > 0");
  }

  if (doc.contains("order_params")) {
    const auto& o = doc["order_params"];
    only_keys(o, "order_params", {"sweep", "values", "beta"});
    cfg.order.kind = field<std::string>(o, "sweep", "order_params", "beta");
    if (cfg.order.kind != "beta" && cfg.order.kind != "mu1") fail("order_params.sweep", "expected 'beta' or 'mu1'");
    if (o.contains("values")) cfg.order.values = list<double>(o["values"], "order_params.values");
    cfg.order.beta = field<double>(o, "beta", "order_params", 1.0);
  }
  if (cfg.order.values.empty() && cfg.order.kind == "beta") cfg.order.values = cfg.betas;

  if (doc.contains("phase_region")) parse_region(doc["phase_region"], cfg);

  if (doc.contains("selftest")) {
    only_keys(doc["selftest"], "selftest", {"instances"});
    cfg.selftest_instances = field<int>(doc["selftest"], "instances", "selftest", 20);
    if (cfg.selftest_instances < 1) fail("selftest.instances", "must be >= 1");
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in, nullptr, true, false);
  } catch (const json::parse_error& e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
  return parse_config(doc);
}

Model RunConfig::build_model(int site_cap) const {
  Model m;
  m.lattice = build_lattice(dim, length, site_cap);
  m.families = generate_families(m.lattice, shapes, boundary);
  m.params = CouplingParams(couplings, even_p_model);
  m.validate();
  return m;
}

Ensemble RunConfig::ensemble() const {
  Ensemble e{build_model(), plan, tolerances, allow_retry};
  return e;
}

json RunConfig::resolved() const {
  json doc;
  doc["lattice"] = {{"dim", dim}, {"length", length}, {"boundary", boundary_name(boundary)}};
  json shapes_json = json::array();
  for (const auto& s : shapes) shapes_json.push_back({{"p", s.p}, {"offsets", s.offsets}});
  doc["shapes"] = shapes_json;
  json cs = json::array();
  const CouplingParams sorted(couplings);
  for (const auto& t : sorted.terms()) {
    cs.push_back({{"p", t.p}, {"mean", t.mean}, {"stddev", t.stddev}});
  }
  doc["couplings"] = cs;
  doc["even_p_model"] = even_p_model;
  doc["beta"] = betas;
  doc["gauge_axis"] = axis_json(gauge_axis);
  doc["observables"] = {{"x", observables.x}, {"y", observables.y}, {"z", observables.z},
                        {"w", axis_json(observables.w)}, {"v", axis_json(observables.v)}};
  doc["method"] = {{"kind", method_name(plan.method)},
                   {"n_samples", plan.n_samples},
                   {"nodes_per_dim", plan.nodes_per_dim},
                   {"retry", allow_retry}};
  doc["seed"] = plan.seed;
  doc["tolerances"] = {{"z_score", tolerances.z_score},
                       {"quadrature", tolerances.quadrature},
                       {"clip_fraction", tolerances.clip_fraction},
                       {"exact", tolerances.exact}};
  doc["output"] = {{"dir", out_dir}, {"csv", {{"disorder", csv.disorder}, {"correlations", csv.correlations}}}};
  doc["bounds"] = {{"a1", bounds.a1}, {"a2", bounds.a2}, {"a2_step", bounds.a2_step}};
  doc["order_params"] = {{"sweep", order.kind}, {"values", order.values}, {"beta", order.beta}};
  json pr;
  pr["beta_t"] = region.beta_t ? json(*region.beta_t) : json(nullptr);
  json pts = json::array();
  for (const auto& p : region.points) pts.push_back({{"mu", p.mu}, {"delta", p.delta}});
  pr["points"] = pts;
  if (region.grid) {
    const auto& g = *region.grid;
    auto ax = [](const GridAxis& a) { return json{{"lo", a.lo}, {"hi", a.hi}, {"count", a.count}}; };
    pr["grid"] = {{"mu_x", ax(g.mu[0])}, {"mu_y", ax(g.mu[1])}, {"mu_z", ax(g.mu[2])}, {"delta", g.delta}};
  } else {
    pr["grid"] = nullptr;
  }
  doc["phase_region"] = pr;
  doc["selftest"] = {{"instances", selftest_instances}};
  return doc;
}

std::string config_hash(const RunConfig& cfg) {
  json doc = cfg.resolved();
  doc.erase("seed");
  doc.erase("output");
  const std::string text = doc.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace xyzglass::cli
