#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "moikit/matrix.hpp"
#include "moikit/report.hpp"

namespace moikit::cli {

nlohmann::ordered_json to_json(const CheckRecord& check);
nlohmann::ordered_json to_json(const Matrix& m);

/// Report document. Everything except "timings" is a deterministic function
/// of the config.
struct ReportDocument {
  std::string command;
  nlohmann::ordered_json config;
  VerificationReport checks;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
  std::optional<Matrix> result;
  nlohmann::ordered_json timings = nlohmann::ordered_json::object();

  bool passed() const noexcept { return checks.passed(); }
  nlohmann::ordered_json to_json() const;
};

/// The document with the "timings" key removed, serialized.
std::string report_body(const nlohmann::ordered_json& report);

}  // namespace moikit::cli
