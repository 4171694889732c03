#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace moikit::cli {

struct RunConfig {
  std::string command;
  std::optional<std::filesystem::path> function;
  std::vector<std::filesystem::path> matrices;
  std::optional<int> order;
  std::string strategy = "moi";
  bool check = false;
  /// Full tolerance table: defaults with overrides applied.
  std::map<std::string, double> tolerances;
  std::uint64_t seed = 42;
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> result;
  unsigned threads = 1;
  bool deterministic = true;
  std::vector<std::string> filter;
  /// Schatten exponent for the remainder bound.
  double p = 1.0;
  /// Gauss-Legendre points for the integral remainder.
  int steps = 32;
};

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"eval", "derivative", "remainder", "verify", "bench"};
  return names;
}

/// Outcome of argument parsing: either a config or an early exit (help,
/// version) with text already written.
struct ParsedArgs {
  std::optional<RunConfig> config;
  int exit_code = 0;
};

/// Flags override values from --config. Throws moikit::Error(Parse) on bad
/// input.
ParsedArgs parse_args(std::span<const std::string> args, std::ostream& out);

/// Applies a JSON config document; relative paths resolve against `base`.
void apply_config_json(const nlohmann::json& doc, const std::filesystem::path& base, RunConfig& config);

/// "name=value" into the table; unknown names and bad numbers throw Parse.
void apply_tolerance_override(const std::string& spec, std::map<std::string, double>& table);

nlohmann::ordered_json config_echo(const RunConfig& config);

}  // namespace moikit::cli
