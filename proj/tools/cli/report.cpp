#include "cli/report.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>

namespace xyzglass::cli {

json estimate_json(const EstimatorResult& r, std::optional<double> tolerance) {
  json j;
  j["value"] = r.mean;
  j["std_error"] = r.std_error;
  j["n"] = r.n_samples;
  j["method"] = method_name(r.method);
  j["tolerance"] = tolerance ? json(*tolerance) : json(nullptr);
  return j;
}

json identity_json(const IdentityCheck& c) {
  json j;
  j["name"] = c.name;
  j["lhs"] = estimate_json(c.lhs, c.tolerance);
  j["rhs"] = estimate_json(c.rhs, c.tolerance);
  j["residual"] = estimate_json(c.residual, c.tolerance);
  const double z = c.residual.z_score();
  j["z_score"] = std::isfinite(z) ? json(z) : json(nullptr);
  j["tolerance_kind"] = c.residual.method == Method::mc ? "abs_z_score" : "abs_residual";
  j["retries"] = c.retries;
  j["pass"] = c.pass;
  return j;
}

json chain_json(const ChainReport& r) {
  json steps = json::array();
  for (const auto& s : r.steps) {
    steps.push_back({{"name", s.name},
                     {"relation", s.relation},
                     {"lhs", estimate_json(s.lhs, s.tolerance)},
                     {"rhs", estimate_json(s.rhs, s.tolerance)},
                     {"margin", s.margin},
                     {"tolerance", s.tolerance},
                     {"pass", s.pass}});
  }
  json j;
  j["name"] = r.name;
  j["steps"] = steps;
  j["lhs"] = estimate_json(r.lhs, std::nullopt);
  j["rhs"] = estimate_json(r.rhs, std::nullopt);
  j["clipped"] = r.clips.clipped;
  j["clip_total"] = r.clips.total;
  j["clip_ok"] = r.clip_ok;
  j["pair_violations"] = r.pair_violations;
  j["max_pair_magnitude"] = {{"value", r.max_pair_magnitude}, {"method", "exact"}, {"tolerance", 2.0}};
  j["pass"] = r.pass;
  return j;
}

json error_record(const std::string& kind, const std::string& message, int exit_code) {
  return {{"error", {{"kind", kind}, {"message", message}, {"exit_code", exit_code}}}};
}

std::filesystem::path run_directory(const RunConfig& cfg) {
  const auto dir = std::filesystem::path(cfg.out_dir) /
                   ("run-" + std::to_string(cfg.plan.seed) + "-" + config_hash(cfg));
  std::filesystem::create_directories(dir);
  return dir;
}

std::string free_suffix(const std::filesystem::path& dir, const std::vector<std::string>& names_with_ext) {
  for (int k = 0;; ++k) {
    const std::string suffix = k == 0 ? "" : "." + std::to_string(k);
    bool used = false;
    for (const auto& name : names_with_ext) {
      const auto dot = name.rfind('.');
      used = used || std::filesystem::exists(dir / (name.substr(0, dot) + suffix + name.substr(dot)));
    }
    if (!used) return suffix;
  }
}

std::filesystem::path write_new_file(const std::filesystem::path& dir, const std::string& stem,
                                     const std::string& suffix, const std::string& ext, const std::string& content) {
  const auto path = dir / (stem + suffix + ext);
  if (std::filesystem::exists(path)) throw std::runtime_error("refusing to overwrite " + path.string());
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return path;
}

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace xyzglass::cli
