#pragma once

#include <string>
#include <vector>

namespace moikit {

enum class Relation {
  Equal,   ///< pass when residual <= tolerance
  AtMost,  ///< lhs <= rhs; residual = lhs - rhs, pass when residual <= tolerance
};

struct CheckRecord {
  std::string name;
  /// The identity or inequality being checked, in words.
  std::string anchor;
  Relation relation = Relation::Equal;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

CheckRecord equality_check(std::string name, std::string anchor, double lhs, double rhs, double residual,
                           double tolerance);
CheckRecord bound_check(std::string name, std::string anchor, double value, double bound, double tolerance);

class VerificationReport {
 public:
  VerificationReport() = default;
  explicit VerificationReport(std::string name) : name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }
  const std::vector<CheckRecord>& checks() const noexcept { return checks_; }

  void add(CheckRecord record) { checks_.push_back(std::move(record)); }
  void append(const VerificationReport& other);
  /// Conjunction of all checks; an empty report passes.
  bool passed() const noexcept;
  std::size_t failures() const noexcept;
  const CheckRecord* find(const std::string& name) const noexcept;

 private:
  std::string name_;
  std::vector<CheckRecord> checks_;
};

}  // namespace moikit
