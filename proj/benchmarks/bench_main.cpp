#include <vector>

#include <benchmark/benchmark.h>

#include "moikit/divided_difference.hpp"
#include "moikit/frechet.hpp"
#include "moikit/moi.hpp"
#include "moikit/rng.hpp"
#include "moikit/spectral.hpp"

using namespace moikit;

namespace {

std::vector<Matrix> hermitian_list(CounterRng& rng, int count, std::size_t n) {
  std::vector<Matrix> out;
  for (int i = 0; i < count; ++i) out.push_back(random_hermitian(rng, n));
  return out;
}

void BM_Eigendecompose(benchmark::State& state) {
  CounterRng rng(42, 1);
  const Matrix a = random_hermitian(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eigendecompose(a));
}
BENCHMARK(BM_Eigendecompose)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_DividedDifferenceClosedForm(benchmark::State& state) {
  const Polynomial p({1.0, -0.5, 0.25, 2.0, -1.0, 0.5, 0.1, -0.2, 0.3});
  CounterRng rng(42, 2);
  const NodeTuple nodes(random_distinct_nodes(rng, static_cast<std::size_t>(state.range(0)) + 1, -2.0, 2.0, 0.1));
  for (auto _ : state) benchmark::DoNotOptimize(poly_divided_difference(p, nodes));
}
BENCHMARK(BM_DividedDifferenceClosedForm)->DenseRange(1, 7, 3);

void BM_DividedDifferenceRecursive(benchmark::State& state) {
  const ScalarFunction f = builtin::exp();
  CounterRng rng(42, 3);
  const NodeTuple nodes(random_distinct_nodes(rng, static_cast<std::size_t>(state.range(0)) + 1, -2.0, 2.0, 0.1));
  for (auto _ : state) benchmark::DoNotOptimize(divided_difference_recursive(f, nodes));
}
BENCHMARK(BM_DividedDifferenceRecursive)->DenseRange(1, 7, 3);

void BM_DividedDifferenceQuadrature(benchmark::State& state) {
  const ScalarFunction f = builtin::exp();
  const int k = static_cast<int>(state.range(0));
  CounterRng rng(42, 4);
  const NodeTuple nodes(random_distinct_nodes(rng, static_cast<std::size_t>(k) + 1, -1.0, 1.0, 0.1));
  const auto& rule = SimplexQuadratureRule::cached(k);
  for (auto _ : state) benchmark::DoNotOptimize(divided_difference_quadrature(f, nodes, rule));
}
BENCHMARK(BM_DividedDifferenceQuadrature)->DenseRange(1, 3, 1);

// args: n, k, threads
void BM_MoiEvaluate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  CounterRng rng(42, 5);
  const auto d = hermitian_eigendecompose(random_hermitian(rng, n));
  const auto ops = MoiOperands::repeated(d, hermitian_list(rng, k, n));
  const auto symbol = MoiSymbol::divided_difference(WienerAtomic::cosine(), k);
  const MoiOptions options{static_cast<unsigned>(state.range(2))};
  for (auto _ : state) benchmark::DoNotOptimize(moi_evaluate(symbol, ops, options));
}
BENCHMARK(BM_MoiEvaluate)
    ->Args({8, 1, 1})
    ->Args({8, 2, 1})
    ->Args({8, 3, 1})
    ->Args({16, 2, 1})
    ->Args({16, 3, 1})
    ->Args({16, 3, 4});

void BM_MoiPolynomial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  CounterRng rng(42, 6);
  const auto d = hermitian_eigendecompose(random_hermitian(rng, n));
  const auto ops = MoiOperands::repeated(d, hermitian_list(rng, k, n));
  for (auto _ : state) benchmark::DoNotOptimize(moi_polynomial(8, ops));
}
BENCHMARK(BM_MoiPolynomial)->Args({8, 2})->Args({16, 3});

void BM_Derivative(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  const auto strategy = static_cast<DerivativeStrategy>(state.range(2));
  CounterRng rng(42, 7);
  DerivativeRequest req(WienerAtomic::cosine(), random_hermitian(rng, n), hermitian_list(rng, k, n));
  req.strategy = strategy;
  req.finite_difference = FiniteDifferenceOptions::for_order(k);
  for (auto _ : state) benchmark::DoNotOptimize(matrix_function_derivative(req));
}
BENCHMARK(BM_Derivative)
    ->ArgNames({"n", "k", "strategy"})
    ->Args({8, 2, static_cast<int>(DerivativeStrategy::Moi)})
    ->Args({8, 2, static_cast<int>(DerivativeStrategy::FiniteDifference)})
    ->Args({8, 3, static_cast<int>(DerivativeStrategy::Moi)})
    ->Args({8, 3, static_cast<int>(DerivativeStrategy::FiniteDifference)});

}  // namespace

BENCHMARK_MAIN();
