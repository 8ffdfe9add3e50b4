// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include "rsrr/types.hpp"

namespace rsrr::test
{

inline ComplexMatrix random_matrix(Index rows, Index cols, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  ComplexMatrix A(rows, cols);
  for (Index j = 0; j < cols; j++)
  {
    for (Index i = 0; i < rows; i++)
    {
      A(i, j) = Complex(g(rng), g(rng));
    }
  }
  return A;
}

inline Complex random_point(std::mt19937_64 &rng, double radius)
{
  std::uniform_real_distribution<double> u(-radius, radius);
  return {u(rng), u(rng)};
}

inline double rel_diff(const ComplexMatrix &A, const ComplexMatrix &B)
{
  const double scale = std::max(A.norm(), B.norm());
  return scale == 0.0 ? 0.0 : (A - B).norm() / scale;
}

}  // namespace rsrr::test
