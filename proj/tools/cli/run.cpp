#include "cli/run.hpp"

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "cli/report.hpp"
#include "xyzglass/parallel.hpp"

namespace xyzglass::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

int emit_error(std::ostream& err, const std::string& kind, const std::string& message, int code) {
  err << error_record(kind, message, code).dump() << '\n';
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verification engine for the quantum XYZ mixed p-spin glass", "xyzglass"};
  app.set_version_flag("--version", kVersion);
  std::string config_path;
  std::optional<std::uint64_t> seed;
  int threads = 0;
  std::optional<std::string> out_dir;
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--seed", seed, "Seed (overrides the config)");
  app.add_option("--threads", threads, "Worker threads (default: XYZGLASS_THREADS or all cores)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--out", out_dir, "Output root directory (overrides the config)");
  app.require_subcommand(1, 1);
  for (const char* name : {"verify-identities", "verify-bounds", "order-params", "phase-region", "selftest"}) {
    app.add_subcommand(name)->fallthrough();
  }
  app.get_subcommand("verify-identities")->description("Gauge identities on a disorder ensemble");
  app.get_subcommand("verify-bounds")->description("Magnetization and susceptibility bound chains");
  app.get_subcommand("order-params")->description("Finite-size order parameters over a sweep");
  app.get_subcommand("phase-region")->description("Pyramid-region membership and grid export");
  app.get_subcommand("selftest")->description("Operator algebra and reference cross-checks");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForVersion& e) {
    out << kVersion << '\n';
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    return emit_error(err, "usage", e.what(), kExitConfig);
  }
  const std::string command = app.get_subcommands().front()->get_name();

  RunConfig cfg;
  std::filesystem::path dir;
  try {
    if (!config_path.empty()) {
      cfg = load_config(config_path);
    } else if (command != "selftest") {
      throw ConfigError("--config is required for " + command);
    }
    if (seed) cfg.plan.seed = *seed;
    if (out_dir) cfg.out_dir = *out_dir;
    cfg.plan.threads = resolve_threads(threads);

    CommandResult res;
    if (command == "verify-identities") res = verify_identities(cfg);
    else if (command == "verify-bounds") res = verify_bounds(cfg);
    else if (command == "order-params") res = order_params(cfg);
    else if (command == "phase-region") res = phase_region(cfg);
    else res = selftest(cfg);

    json report;
    report["tool"] = "xyzglass";
    report["version"] = kVersion;
    report["subcommand"] = command;
    report["generated_at"] = utc_timestamp();
    report["seed"] = cfg.plan.seed;
    report["config_hash"] = config_hash(cfg);
    report["config"] = cfg.resolved();
    report["results"] = res.results;
    report["status"] = res.pass ? "pass" : "fail";

    dir = run_directory(cfg);
    std::vector<std::string> names{"report.json"};
    json tables = json::array();
    for (const auto& [stem, content] : res.csv) {
      names.push_back(stem + ".csv");
      tables.push_back(stem);
    }
    report["csv_tables"] = tables;
    const std::string suffix = free_suffix(dir, names);
    for (const auto& [stem, content] : res.csv) write_new_file(dir, stem, suffix, ".csv", content);
    const auto path = write_new_file(dir, "report", suffix, ".json", report.dump(2) + "\n");

    for (const auto& line : res.summary) out << line << '\n';
    out << "report: " << path.string() << '\n';
    if (!res.pass) {
      return emit_error(err, "assertion", command + ": at least one assertion failed (see " + path.string() + ")",
                        kExitAssertion);
    }
    return kExitPass;
  } catch (const CapacityError& e) {
    return emit_error(err, "capacity", e.what(), kExitCapacity);
  } catch (const ConfigError& e) {
    return emit_error(err, "config", e.what(), kExitConfig);
  } catch (const DomainError& e) {
    return emit_error(err, "domain", e.what(), kExitConfig);
  } catch (const std::exception& e) {
    return emit_error(err, "runtime", e.what(), kExitAssertion);
  }
}

}  // namespace xyzglass::cli
