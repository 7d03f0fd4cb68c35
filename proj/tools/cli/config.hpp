#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "xyzglass/identities.hpp"
#include "xyzglass/phase_region.hpp"

namespace xyzglass::cli {

using nlohmann::json;

struct CsvOptions {
  bool disorder = false;      ///< couplings of sample 0
  bool correlations = false;  ///< <tau_i tau_j> of sample 0 on the Nishimori line
};

struct ObservableSpec {
  std::vector<int> x{0};
  std::vector<int> y{0};
  std::vector<int> z;
  Axis w = Axis::z;
  Axis v = Axis::y;  ///< second axis of the susceptibility bound
};

struct BoundsOptions {
  bool a1 = true;
  bool a2 = false;
  double a2_step = 1e-2;
};

struct OrderSweep {
  std::string kind = "beta";  ///< "beta" or "mu1"
  std::vector<double> values;
  double beta = 1.0;  ///< fixed beta of a "mu1" sweep
};

struct RegionPoint {
  AxisTriple mu{};
  AxisTriple delta{1.0, 1.0, 1.0};
};

struct RegionOptions {
  std::optional<double> beta_t;
  std::vector<RegionPoint> points;
  std::optional<RegionGrid> grid;
};

/// Fully resolved run configuration. `resolved()` reproduces it as JSON with
/// every default filled in.
struct RunConfig {
  int dim = 1;
  int length = 2;
  Boundary boundary = Boundary::open;
  std::vector<InteractionShape> shapes;
  std::vector<CouplingTerm> couplings;
  bool even_p_model = false;
  std::vector<double> betas{1.0};
  Axis gauge_axis = Axis::x;
  ObservableSpec observables;
  SamplingPlan plan;
  Tolerances tolerances;
  bool allow_retry = true;
  std::string out_dir = "out";
  CsvOptions csv;
  BoundsOptions bounds;
  OrderSweep order;
  RegionOptions region;
  int selftest_instances = 20;

  /// Lattice, bond families and coupling law. Throws ConfigError/CapacityError.
  Model build_model(int site_cap = kQuantumSiteCap) const;
  Ensemble ensemble() const;
  json resolved() const;
};

/// Parses and validates a config document. Unknown keys are errors.
RunConfig parse_config(const json& doc);
RunConfig load_config(const std::string& path);

/// FNV-1a of the resolved config without its seed, as 16 hex digits.
std::string config_hash(const RunConfig& cfg);

}  // namespace xyzglass::cli
