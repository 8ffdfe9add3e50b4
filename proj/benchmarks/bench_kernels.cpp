// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <random>

#include "rsrr/chebyshev.hpp"
#include "rsrr/linalg.hpp"
#include "rsrr/problems.hpp"
#include "rsrr/tridiagonal.hpp"

using namespace rsrr;

namespace
{

ComplexMatrix random_matrix(Index rows, Index cols, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  ComplexMatrix A(rows, cols);
  for (Index i = 0; i < A.size(); i++)
  {
    A(i) = Complex(g(rng), g(rng));
  }
  return A;
}

void BM_DenseSolve(benchmark::State &state)
{
  const Index n = state.range(0);
  const ComplexMatrix A = random_matrix(n, n, 1), B = random_matrix(n, 2, 2);
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(linalg::solve_dense(A, B));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_DenseSolve)->RangeMultiplier(2)->Range(32, 512)->Complexity(benchmark::oNCubed);

void BM_Svd(benchmark::State &state)
{
  const Index n = state.range(0);
  const ComplexMatrix A = random_matrix(4 * n, n, 3);
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(linalg::svd(A));
  }
}
BENCHMARK(BM_Svd)->RangeMultiplier(2)->Range(16, 128);

void BM_StringResolvent(benchmark::State &state)
{
  const Index n = state.range(0);
  const auto T = problems::make_loaded_string(n);
  const ComplexMatrix U = random_matrix(n, 1, 4);
  const Complex z(2500.0, 100.0);
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(T.solve(z, U));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_StringResolvent)->Arg(1000)->Arg(4000)->Arg(16000)->Arg(64000)->Complexity(benchmark::oN);

void BM_AcousticResolventDense(benchmark::State &state)
{
  const Index n = state.range(0);
  const auto T = problems::make_acoustic_1d(n, 1.0).with_strategy(SumFormNep::SolveStrategy::Dense);
  const ComplexMatrix U = random_matrix(n, 2, 5);
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(T.solve(Complex(9.9, 0.8), U));
  }
}
BENCHMARK(BM_AcousticResolventDense)->Arg(200)->Arg(400);

void BM_ChebyshevEvaluate(benchmark::State &state)
{
  const Index d = state.range(0);
  const ComplexMatrix A = random_matrix(64, 64, 6), B = random_matrix(64, 64, 7);
  const auto p = interpolate_matrix([&](Complex z) { return ComplexMatrix(A + std::exp(z) * B); },
                                    d, 0.0, 2.0);
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(p.evaluate(Complex(1.0, 0.2)));
  }
}
BENCHMARK(BM_ChebyshevEvaluate)->Arg(10)->Arg(40);

}  // namespace
