#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cli/config.hpp"

namespace xyzglass::cli {

struct CommandResult {
  json results;
  bool pass = true;
  std::vector<std::pair<std::string, std::string>> csv;  ///< (file stem, content)
  std::vector<std::string> summary;                      ///< one line per assertion
};

CommandResult verify_identities(const RunConfig& cfg);
CommandResult verify_bounds(const RunConfig& cfg);
CommandResult order_params(const RunConfig& cfg);
CommandResult phase_region(const RunConfig& cfg);
/// Operator algebra and reference cross-checks on `cfg.selftest_instances`
/// random instances per family of checks.
CommandResult selftest(const RunConfig& cfg);

}  // namespace xyzglass::cli
