#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cli/config.hpp"

namespace xyzglass::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitAssertion = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitCapacity = 3;

/// Estimate with its method tag. A null tolerance marks an unasserted value.
json estimate_json(const EstimatorResult& r, std::optional<double> tolerance);
json identity_json(const IdentityCheck& c);
json chain_json(const ChainReport& r);

/// Machine-readable error record.
json error_record(const std::string& kind, const std::string& message, int exit_code);

/// out_dir/run-<seed>-<hash>. Created on demand.
std::filesystem::path run_directory(const RunConfig& cfg);

/// Files of the k-th invocation in a run directory carry the suffix "" for
/// k = 0 and ".k" otherwise (report.json, report.1.json, ...). Returns the
/// first suffix not used by any of the given file names.
std::string free_suffix(const std::filesystem::path& dir, const std::vector<std::string>& names_with_ext);

/// Writes stem + suffix + ext; refuses to replace an existing file.
std::filesystem::path write_new_file(const std::filesystem::path& dir, const std::string& stem,
                                     const std::string& suffix, const std::string& ext, const std::string& content);

/// UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

}  // namespace xyzglass::cli
