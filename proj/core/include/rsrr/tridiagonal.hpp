// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rsrr/types.hpp"

namespace rsrr
{

// Complex tridiagonal matrix stored by diagonals.
struct Tridiagonal
{
  ComplexVector lower;  // n-1, entries (i+1, i)
  ComplexVector diag;   // n
  ComplexVector upper;  // n-1, entries (i, i+1)

  Index size() const { return diag.size(); }
  ComplexMatrix apply(const ComplexMatrix &X) const;
  ComplexMatrix to_dense() const;
};

// LU factorisation with partial (row) pivoting, the same elimination scheme as LAPACK's
// ?gttrf: pivoting fills one extra superdiagonal.
class TridiagonalLU
{
public:
  /// Throws SingularMatrix if a pivot vanishes (relative to the largest pivot).
  explicit TridiagonalLU(const Tridiagonal &T);

  ComplexMatrix solve(const ComplexMatrix &B) const;

private:
  ComplexVector dl_, d_, du_, du2_;
  std::vector<bool> swapped_;
};

}  // namespace rsrr
