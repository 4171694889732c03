#include "commands.hpp"

#include <chrono>
#include <functional>

#include "log.hpp"
#include "moikit/error.hpp"
#include "moikit/frechet.hpp"
#include "moikit/io.hpp"
#include "moikit/moi.hpp"
#include "moikit/rng.hpp"
#include "moikit/schatten.hpp"
#include "moikit/spectral.hpp"
#include "verify_suite.hpp"

namespace moikit::cli {

namespace {

class Stopwatch {
 public:
  explicit Stopwatch(nlohmann::ordered_json& sink) : sink_(sink) {}

  template <typename F>
  auto time(const std::string& label, F&& body) {
    const auto start = std::chrono::steady_clock::now();
    auto value = body();
    sink_[label] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return value;
  }

 private:
  nlohmann::ordered_json& sink_;
};

ReportDocument start_report(const RunConfig& config) {
  ReportDocument doc;
  doc.command = config.command;
  doc.config = config_echo(config);
  doc.checks = VerificationReport(config.command);
  return doc;
}

ScalarFunction load_function(const RunConfig& config) {
  if (!config.function) throw Error(ErrorCode::InvalidArgument, config.command + " needs --function");
  return read_function_file(*config.function);
}

std::vector<Matrix> load_matrices(const RunConfig& config, std::size_t at_least) {
  if (config.matrices.size() < at_least) {
    throw Error(ErrorCode::InvalidArgument,
                config.command + " needs at least " + std::to_string(at_least) + " --matrix files");
  }
  std::vector<Matrix> out;
  for (const auto& path : config.matrices) out.push_back(read_matrix_file(path));
  return out;
}

DerivativeStrategy parse_strategy(const std::string& s) {
  if (s == "fd") return DerivativeStrategy::FiniteDifference;
  if (s == "power") return DerivativeStrategy::PowerClosedForm;
  return DerivativeStrategy::Moi;
}

void write_result(const RunConfig& config, const Matrix& m) {
  if (config.result) write_matrix_file(*config.result, m);
}

}  // namespace

ReportDocument cmd_eval(const RunConfig& config) {
  auto doc = start_report(config);
  const ScalarFunction f = load_function(config);
  const auto matrices = load_matrices(config, 1);
  if (matrices.size() != 1) throw Error(ErrorCode::InvalidArgument, "eval takes exactly one --matrix");
  Stopwatch watch(doc.timings);
  const auto d = watch.time("decompose", [&] { return hermitian_eigendecompose(matrices[0]); });
  doc.result = watch.time("functional_calculus", [&] { return functional_calculus(f, d); });
  doc.checks.append(validate_decomposition(d));
  doc.details["function"] = f.describe();
  doc.details["eigenvalues"] = d.eigenvalues();
  doc.details["cluster_tol"] = d.cluster_tol();
  write_result(config, *doc.result);
  return doc;
}

ReportDocument cmd_derivative(const RunConfig& config) {
  auto doc = start_report(config);
  const ScalarFunction f = load_function(config);
  auto matrices = load_matrices(config, 2);
  std::vector<Matrix> dirs(matrices.begin() + 1, matrices.end());
  const int k = config.order.value_or(static_cast<int>(dirs.size()));
  if (dirs.size() == 1 && k > 1) dirs.assign(static_cast<std::size_t>(k), dirs.front());
  if (static_cast<int>(dirs.size()) != k) {
    throw Error(ErrorCode::ArityMismatch, "order " + std::to_string(k) + " needs " + std::to_string(k) +
                                              " direction matrices, got " + std::to_string(dirs.size()));
  }
  DerivativeRequest req(f, matrices[0], dirs);
  req.strategy = parse_strategy(config.strategy);
  req.moi.threads = config.threads;
  if (req.strategy == DerivativeStrategy::FiniteDifference) req.finite_difference = FiniteDifferenceOptions::for_order(k);
  Stopwatch watch(doc.timings);
  const Matrix value = watch.time("derivative", [&] { return matrix_function_derivative(req); });
  doc.result = value;
  doc.details["function"] = f.describe();
  doc.details["order"] = k;

  if (config.check) {
    const auto fd_options = FiniteDifferenceOptions::for_order(k);
    const Matrix fd = watch.time("finite_difference", [&] {
      return finite_difference_derivative(f, req.a, req.directions, fd_options);
    });
    // 1e-8 absolute floor: finite differences of zero derivatives are only zero up to rounding.
    const double tol = config.tolerances.at("finite_difference");
    doc.checks.add(equality_check("derivative_vs_finite_difference",
                                  "D^k f(A)[B] = sum_pi (I^{A..A} f^[k])[B_pi] (finite-difference oracle)",
                                  value.frobenius_norm(), fd.frobenius_norm(), frobenius_distance(value, fd),
                                  tol * value.frobenius_norm() + 1e-8));
    doc.details["finite_difference_step"] = fd_options.step;
    if (f.polynomial() != nullptr) {
      req.strategy = DerivativeStrategy::PowerClosedForm;
      const Matrix power = watch.time("power_closed_form", [&] { return matrix_function_derivative(req); });
      doc.checks.add(equality_check("derivative_vs_power_map",
                                    "D^k p(A)[B] = sum_m c_m sum_pi sum_|g|=m-k A^g1 B_pi1 ... A^g(k+1)",
                                    value.frobenius_norm(), power.frobenius_norm(), frobenius_distance(value, power),
                                    config.tolerances.at("power_map") *
                                        std::max(value.frobenius_norm(), power.frobenius_norm())));
    }
  }
  write_result(config, value);
  return doc;
}

ReportDocument cmd_remainder(const RunConfig& config) {
  auto doc = start_report(config);
  const ScalarFunction f = load_function(config);
  const auto matrices = load_matrices(config, 2);
  if (matrices.size() != 2) throw Error(ErrorCode::InvalidArgument, "remainder takes --matrix a --matrix b");
  const Matrix& a = matrices[0];
  const Matrix& b = matrices[1];
  const int k = config.order.value_or(1);
  Stopwatch watch(doc.timings);
  const Matrix direct = watch.time("direct", [&] { return taylor_remainder_direct(f, k, a, b); });
  const Matrix moi = watch.time("moi", [&] { return taylor_remainder_moi(f, k, a, b); });
  const Matrix integral = watch.time("integral", [&] { return taylor_remainder_integral(f, k, a, b, config.steps); });
  const double scale = 1.0 + direct.frobenius_norm();
  doc.checks.add(equality_check("remainder_direct_vs_moi", "R_k f(a; b) = (I^{a+b, a, ..., a} f^[k])[b, ..., b]",
                                direct.frobenius_norm(), moi.frobenius_norm(), frobenius_distance(direct, moi),
                                config.tolerances.at("remainder_moi") * scale));
  doc.checks.add(equality_check("remainder_direct_vs_integral",
                                "R_k f(a; b) = k int_0^1 (1-t)^{k-1} (I^{a+tb} f^[k])[b, ..., b] dt",
                                direct.frobenius_norm(), integral.frobenius_norm(),
                                frobenius_distance(direct, integral), config.tolerances.at("remainder_integral") * scale));
  doc.checks.add(equality_check("remainder_moi_vs_integral", "MOI and integral forms of R_k f(a; b) agree",
                                moi.frobenius_norm(), integral.frobenius_norm(), frobenius_distance(moi, integral),
                                config.tolerances.at("remainder_integral") * scale));
  if (const auto* w = f.wiener()) {
    doc.checks.append(watch.time("schatten_bound", [&] { return remainder_schatten_check(*w, k, a, b, config.p); }));
  } else if (const auto* p = f.polynomial()) {
    doc.checks.append(watch.time("schatten_bound", [&] { return remainder_schatten_check(*p, k, a, b, config.p); }));
  } else {
    doc.details["schatten_bound"] = "skipped: needs a polynomial or Wiener function";
  }
  doc.details["function"] = f.describe();
  doc.details["order"] = k;
  doc.details["radius"] = remainder_radius(a, b, config.steps);
  doc.result = direct;
  write_result(config, direct);
  return doc;
}

ReportDocument cmd_verify(const RunConfig& config) {
  auto doc = start_report(config);
  VerifyOptions options{config.seed, config.tolerances, config.filter, config.threads};
  Stopwatch watch(doc.timings);
  doc.checks = watch.time("suite", [&] { return run_verify_suite(options, doc.details); });
  return doc;
}

ReportDocument cmd_bench(const RunConfig& config) {
  auto doc = start_report(config);
  CounterRng rng(config.seed, 99);
  Stopwatch watch(doc.timings);
  const ScalarFunction f = WienerAtomic::cosine();
  for (std::size_t n : {4u, 8u, 16u}) {
    const Matrix a = random_hermitian(rng, n);
    const auto label = "n" + std::to_string(n);
    const auto d = watch.time("decompose_" + label, [&] { return hermitian_eigendecompose(a); });
    for (int k = 1; k <= 3; ++k) {
      std::vector<Matrix> dirs;
      for (int j = 0; j < k; ++j) dirs.push_back(random_hermitian(rng, n));
      watch.time("derivative_k" + std::to_string(k) + "_" + label, [&] {
        DerivativeRequest req(f, a, dirs);
        req.moi.threads = config.threads;
        return matrix_function_derivative(req);
      });
    }
  }
  doc.details["note"] = "timings only; see the timings key";
  return doc;
}

}  // namespace moikit::cli
