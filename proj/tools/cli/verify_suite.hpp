#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "moikit/report.hpp"

namespace moikit::cli {

/// Group names in the order they run.
const std::vector<std::string>& verify_groups();

struct VerifyOptions {
  std::uint64_t seed = 42;
  std::map<std::string, double> tolerances;
  /// Empty runs every group.
  std::vector<std::string> groups;
  unsigned threads = 1;
};

/// Runs the seeded suite. Case counts per group land in `details`.
VerificationReport run_verify_suite(const VerifyOptions& options, nlohmann::ordered_json& details);

}  // namespace moikit::cli
