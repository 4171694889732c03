#include "moikit/report.hpp"

#include <algorithm>
#include <cmath>

namespace moikit {

CheckRecord equality_check(std::string name, std::string anchor, double lhs, double rhs, double residual,
                           double tolerance) {
  CheckRecord r{std::move(name), std::move(anchor), Relation::Equal, lhs, rhs, residual, tolerance, false};
  r.pass = std::isfinite(residual) && residual <= tolerance;
  return r;
}

CheckRecord bound_check(std::string name, std::string anchor, double value, double bound, double tolerance) {
  CheckRecord r{std::move(name), std::move(anchor), Relation::AtMost, value, bound, value - bound, tolerance, false};
  r.pass = std::isfinite(r.residual) && r.residual <= tolerance;
  return r;
}

void VerificationReport::append(const VerificationReport& other) {
  checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end());
}

bool VerificationReport::passed() const noexcept {
  return std::all_of(checks_.begin(), checks_.end(), [](const CheckRecord& c) { return c.pass; });
}

std::size_t VerificationReport::failures() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(checks_.begin(), checks_.end(), [](const CheckRecord& c) { return !c.pass; }));
}

const CheckRecord* VerificationReport::find(const std::string& name) const noexcept {
  auto it = std::find_if(checks_.begin(), checks_.end(), [&](const CheckRecord& c) { return c.name == name; });
  return it == checks_.end() ? nullptr : &*it;
}

}  // namespace moikit
