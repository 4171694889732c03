#include "app.hpp"

#include <fstream>
#include <vector>

#include "commands.hpp"
#include "config.hpp"
#include "log.hpp"
#include "moikit/error.hpp"

namespace moikit::cli {

namespace {

int exit_code_for(const Error& e) { return e.code() == ErrorCode::Parse ? kParseError : kPrecondition; }

ReportDocument dispatch(const RunConfig& config) {
  if (config.command == "eval") return cmd_eval(config);
  if (config.command == "derivative") return cmd_derivative(config);
  if (config.command == "remainder") return cmd_remainder(config);
  if (config.command == "verify") return cmd_verify(config);
  return cmd_bench(config);
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  try {
    const auto parsed = parse_args(args, out);
    if (!parsed.config) return parsed.exit_code;
    const RunConfig& config = *parsed.config;
    logger().info("running {}", config.command);

    const auto report = dispatch(config);
    const std::string text = report.to_json().dump(2) + "\n";
    if (config.out) {
      std::ofstream file(*config.out, std::ios::binary);
      if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write " + config.out->string());
      file << text;
    } else {
      out << text;
    }
    if (!report.passed()) {
      for (const auto& c : report.checks.checks()) {
        if (!c.pass) logger().warn("check {} failed: residual {:.3e} > tolerance {:.3e}", c.name, c.residual, c.tolerance);
      }
      err << "moikit: " << report.checks.failures() << " check(s) failed\n";
      return kCheckFailed;
    }
    return kOk;
  } catch (const Error& e) {
    err << "moikit: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "moikit: " << e.what() << "\n";
    return kPrecondition;
  }
}

}  // namespace moikit::cli
