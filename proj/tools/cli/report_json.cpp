#include "report_json.hpp"

#include "moikit/version.hpp"

namespace moikit::cli {

nlohmann::ordered_json to_json(const CheckRecord& check) {
  nlohmann::ordered_json doc;
  doc["name"] = check.name;
  doc["anchor"] = check.anchor;
  doc["relation"] = check.relation == Relation::Equal ? "equal" : "at_most";
  doc["lhs"] = check.lhs;
  doc["rhs"] = check.rhs;
  doc["residual"] = check.residual;
  doc["tolerance"] = check.tolerance;
  doc["pass"] = check.pass;
  return doc;
}

nlohmann::ordered_json to_json(const Matrix& m) {
  nlohmann::ordered_json re = nlohmann::ordered_json::array();
  nlohmann::ordered_json im = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    nlohmann::ordered_json re_row = nlohmann::ordered_json::array();
    nlohmann::ordered_json im_row = nlohmann::ordered_json::array();
    for (std::size_t j = 0; j < m.size(); ++j) {
      re_row.push_back(m(i, j).real());
      im_row.push_back(m(i, j).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  nlohmann::ordered_json doc;
  doc["n"] = m.size();
  doc["re"] = std::move(re);
  doc["im"] = std::move(im);
  return doc;
}

nlohmann::ordered_json ReportDocument::to_json() const {
  nlohmann::ordered_json doc;
  doc["tool"] = "moikit";
  doc["version"] = kVersion;
  doc["command"] = command;
  doc["config"] = config;
  doc["passed"] = passed();
  doc["summary"] = {{"checks", checks.checks().size()}, {"failures", checks.failures()}};
  doc["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks.checks()) doc["checks"].push_back(cli::to_json(c));
  doc["details"] = details;
  if (result) doc["result"] = cli::to_json(*result);
  doc["timings"] = timings;
  return doc;
}

std::string report_body(const nlohmann::ordered_json& report) {
  auto copy = report;
  copy.erase("timings");
  return copy.dump(2);
}

}  // namespace moikit::cli
