#pragma once

#include <map>
#include <string>

/// Default tolerances used by the verification suites and the CLI.
namespace moikit::tolerances {

/// recursion vs closed form, symmetry, confluent limit, sup bound (relative)
inline constexpr double divided_difference = 1e-9;
/// simplex quadrature vs recursion (absolute)
inline constexpr double quadrature = 1e-7;
/// simplex rule total weight vs 1/k!
inline constexpr double simplex_weight = 1e-12;
/// f(A) - f(B) vs the first-order MOI, relative to 1 + ||f(A)||_F
inline constexpr double perturbation = 1e-8;
/// MOI derivative vs finite differences (relative Frobenius)
inline constexpr double finite_difference = 1e-4;
/// MOI derivative vs power-map closed form (relative Frobenius)
inline constexpr double power_map = 1e-10;
/// direct remainder vs MOI remainder, relative to the remainder scale
inline constexpr double remainder_moi = 1e-8;
/// direct remainder vs Gauss-Legendre integral remainder
inline constexpr double remainder_integral = 1e-6;
/// ||I_n||_p = n^{1/p}
inline constexpr double schatten_identity = 1e-12;
/// grid error of the degree-10 Wiener truncation of cos on [-1, 1]
inline constexpr double truncation_n10 = 3e-8;
/// direction permutation invariance of the derivative (relative)
inline constexpr double symmetry = 1e-12;
/// relative slack allowed on one-sided inequality checks
inline constexpr double bound_slack = 1e-10;

/// Name -> default value, the table overridden by `--tolerance name=value`.
inline std::map<std::string, double> defaults() {
  return {
      {"divided_difference", divided_difference},
      {"quadrature", quadrature},
      {"simplex_weight", simplex_weight},
      {"perturbation", perturbation},
      {"finite_difference", finite_difference},
      {"power_map", power_map},
      {"remainder_moi", remainder_moi},
      {"remainder_integral", remainder_integral},
      {"schatten_identity", schatten_identity},
      {"truncation_n10", truncation_n10},
      {"symmetry", symmetry},
      {"bound_slack", bound_slack},
  };
}

}  // namespace moikit::tolerances
