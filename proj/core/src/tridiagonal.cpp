// SPDX-License-Identifier: Apache-2.0

#include "rsrr/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rsrr/errors.hpp"

namespace rsrr
{

ComplexMatrix Tridiagonal::apply(const ComplexMatrix &X) const
{
  const Index n = size();
  if (X.rows() != n)
  {
    throw DimensionMismatch("Tridiagonal::apply: operand has wrong row count");
  }
  ComplexMatrix Y(n, X.cols());
  for (Index c = 0; c < X.cols(); c++)
  {
    for (Index i = 0; i < n; i++)
    {
      Complex s = diag(i) * X(i, c);
      if (i > 0)
      {
        s += lower(i - 1) * X(i - 1, c);
      }
      if (i + 1 < n)
      {
        s += upper(i) * X(i + 1, c);
      }
      Y(i, c) = s;
    }
  }
  return Y;
}

ComplexMatrix Tridiagonal::to_dense() const
{
  const Index n = size();
  ComplexMatrix A = ComplexMatrix::Zero(n, n);
  for (Index i = 0; i < n; i++)
  {
    A(i, i) = diag(i);
    if (i + 1 < n)
    {
      A(i + 1, i) = lower(i);
      A(i, i + 1) = upper(i);
    }
  }
  return A;
}

TridiagonalLU::TridiagonalLU(const Tridiagonal &T)
  : dl_(T.lower), d_(T.diag), du_(T.upper), du2_(ComplexVector::Zero(std::max<Index>(T.size() - 2, 0))),
    swapped_(static_cast<std::size_t>(std::max<Index>(T.size() - 1, 0)), false)
{
  const Index n = d_.size();
  if (n == 0 || dl_.size() != n - 1 || du_.size() != n - 1)
  {
    throw DimensionMismatch("TridiagonalLU: inconsistent diagonal lengths");
  }
  for (Index i = 0; i + 1 < n; i++)
  {
    if (std::abs(d_(i)) >= std::abs(dl_(i)))
    {
      if (d_(i) != 0.0)
      {
        const Complex fact = dl_(i) / d_(i);
        dl_(i) = fact;
        d_(i + 1) -= fact * du_(i);
      }
    }
    else
    {
      // Interchange rows i and i+1.
      const Complex fact = d_(i) / dl_(i);
      d_(i) = dl_(i);
      dl_(i) = fact;
      const Complex temp = du_(i);
      du_(i) = d_(i + 1);
      d_(i + 1) = temp - fact * d_(i + 1);
      if (i + 2 < n)
      {
        du2_(i) = du_(i + 1);
        du_(i + 1) = -fact * du_(i + 1);
      }
      swapped_[static_cast<std::size_t>(i)] = true;
    }
  }
  double max_pivot = 0.0, min_pivot = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < n; i++)
  {
    max_pivot = std::max(max_pivot, std::abs(d_(i)));
    min_pivot = std::min(min_pivot, std::abs(d_(i)));
  }
  if (!std::isfinite(max_pivot) || max_pivot == 0.0 ||
      min_pivot <= std::numeric_limits<double>::epsilon() * max_pivot)
  {
    throw SingularMatrix("TridiagonalLU: pivot underflow");
  }
}

ComplexMatrix TridiagonalLU::solve(const ComplexMatrix &B) const
{
  const Index n = d_.size();
  if (B.rows() != n)
  {
    throw DimensionMismatch("TridiagonalLU::solve: right-hand side has wrong row count");
  }
  ComplexMatrix X = B;
  for (Index c = 0; c < X.cols(); c++)
  {
    auto b = X.col(c);
    for (Index i = 0; i + 1 < n; i++)
    {
      if (!swapped_[static_cast<std::size_t>(i)])
      {
        b(i + 1) -= dl_(i) * b(i);
      }
      else
      {
        const Complex temp = b(i);
        b(i) = b(i + 1);
        b(i + 1) = temp - dl_(i) * b(i);
      }
    }
    b(n - 1) /= d_(n - 1);
    if (n > 1)
    {
      b(n - 2) = (b(n - 2) - du_(n - 2) * b(n - 1)) / d_(n - 2);
    }
    for (Index i = n - 3; i >= 0; i--)
    {
      b(i) = (b(i) - du_(i) * b(i + 1) - du2_(i) * b(i + 2)) / d_(i);
    }
  }
  return X;
}

}  // namespace rsrr
