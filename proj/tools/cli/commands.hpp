#pragma once

#include "config.hpp"
#include "report_json.hpp"

namespace moikit::cli {

ReportDocument cmd_eval(const RunConfig& config);
ReportDocument cmd_derivative(const RunConfig& config);
ReportDocument cmd_remainder(const RunConfig& config);
ReportDocument cmd_verify(const RunConfig& config);
ReportDocument cmd_bench(const RunConfig& config);

}  // namespace moikit::cli
