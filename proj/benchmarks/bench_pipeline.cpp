// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "rsrr/linalg.hpp"
#include "rsrr/parallel.hpp"
#include "rsrr/problems.hpp"
#include "rsrr/reduced_solver.hpp"
#include "rsrr/rsrr.hpp"
#include "rsrr/subspace.hpp"

using namespace rsrr;

namespace
{

void BM_SamplingAcoustic(benchmark::State &state)
{
  set_thread_limit(static_cast<std::size_t>(state.range(0)));
  const auto T = problems::make_acoustic_1d(1000, 1.0);
  const auto rule = ellipse_trapezoid(Complex(9.9, 0.8), 10.1, 1.01, 100);
  const auto probe = make_probe(1000, 2, 1);
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(build_sampling_matrix(T, rule, probe, 0.0));
  }
}
BENCHMARK(BM_SamplingAcoustic)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_ReducedMoments(benchmark::State &state)
{
  const Index k = state.range(0);
  const auto oracle = problems::make_linear_oracle(k, k / 4, 3);
  const ReducedNep T(ReducedNep::SumForm{{oracle.A, -ComplexMatrix::Identity(k, k)},
                                         {ScalarFunction::constant(), ScalarFunction::power(1)}});
  const auto contour = Contour::ellipse(0.0, 1.0, 1.0);
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(reduced_moments(T, contour, 256, 2));
  }
}
BENCHMARK(BM_ReducedMoments)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_SolveLinearOracle(benchmark::State &state)
{
  const auto oracle = problems::make_linear_oracle(50, 12, 7);
  const auto T = problems::make_linear_pencil(oracle.A);
  RsrrConfig c;
  c.contour = Contour::ellipse(0.0, 1.0, 1.0);
  c.N = 32;
  c.K = 4;
  c.N_S = 128;
  c.seed = 7;
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(solve_rsrr(T, c));
  }
}
BENCHMARK(BM_SolveLinearOracle)->Unit(benchmark::kMillisecond);

void BM_SolveAcoustic(benchmark::State &state)
{
  const auto T = problems::make_acoustic_1d(1000, 1.0);
  RsrrConfig c;
  c.contour = Contour::ellipse(Complex(9.9, 0.8), 10.1, 1.01);
  c.N = 100;
  c.K = 2;
  c.N_S = 1000;
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(solve_rsrr(T, c));
  }
}
BENCHMARK(BM_SolveAcoustic)->Unit(benchmark::kSecond)->Iterations(1);

}  // namespace
