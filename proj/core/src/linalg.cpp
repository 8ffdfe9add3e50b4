// SPDX-License-Identifier: Apache-2.0

#include "rsrr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "rsrr/errors.hpp"

namespace rsrr::linalg
{

ComplexMatrix solve_dense(const ComplexMatrix &A, const ComplexMatrix &B)
{
  if (A.rows() != A.cols())
  {
    throw DimensionMismatch("solve_dense: matrix is " + std::to_string(A.rows()) + "x" +
                            std::to_string(A.cols()) + ", expected square");
  }
  if (A.cols() != B.rows())
  {
    throw DimensionMismatch("solve_dense: right-hand side has " + std::to_string(B.rows()) +
                            " rows, expected " + std::to_string(A.cols()));
  }
  Eigen::PartialPivLU<ComplexMatrix> lu(A);
  const auto &LU = lu.matrixLU();
  double max_pivot = 0.0, min_pivot = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < LU.rows(); i++)
  {
    const double p = std::abs(LU(i, i));
    if (!std::isfinite(p))
    {
      throw SingularMatrix("solve_dense: non-finite pivot");
    }
    max_pivot = std::max(max_pivot, p);
    min_pivot = std::min(min_pivot, p);
  }
  if (max_pivot == 0.0 || min_pivot <= std::numeric_limits<double>::epsilon() * max_pivot)
  {
    throw SingularMatrix("solve_dense: pivot underflow (ratio " +
                         std::to_string(max_pivot > 0 ? min_pivot / max_pivot : 0.0) + ")");
  }
  return lu.solve(B);
}

SvdResult svd(const ComplexMatrix &A)
{
  Eigen::BDCSVD<ComplexMatrix> dec(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (dec.info() != Eigen::Success)
  {
    throw ConvergenceFailure("svd: decomposition did not converge");
  }
  return {dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

RealVector singular_values(const ComplexMatrix &A)
{
  Eigen::BDCSVD<ComplexMatrix> dec(A);
  if (dec.info() != Eigen::Success)
  {
    throw ConvergenceFailure("svd: decomposition did not converge");
  }
  return dec.singularValues();
}

EigResult eig_dense(const ComplexMatrix &A)
{
  if (A.rows() != A.cols())
  {
    throw DimensionMismatch("eig_dense: matrix is not square");
  }
  Eigen::ComplexEigenSolver<ComplexMatrix> es(A, true);
  if (es.info() != Eigen::Success)
  {
    throw ConvergenceFailure("eig_dense: Schur iteration did not converge");
  }
  return {es.eigenvalues(), es.eigenvectors()};
}

Index numerical_rank(const RealVector &singular_values, double tol)
{
  if (singular_values.size() == 0 || singular_values(0) <= 0.0)
  {
    return 0;
  }
  const double threshold = tol * singular_values(0);
  Index rank = 0;
  while (rank < singular_values.size() && singular_values(rank) >= threshold)
  {
    rank++;
  }
  return rank;
}

ComplexMatrix orthonormalize(const ComplexMatrix &A, double tol)
{
  const auto dec = svd(A);
  const Index k = numerical_rank(dec.singular_values, tol);
  return dec.U.leftCols(k);
}

double max_principal_angle(const ComplexMatrix &X, const ComplexMatrix &Y)
{
  const ComplexMatrix Qx = orthonormalize(X);
  const ComplexMatrix Qy = orthonormalize(Y);
  const ComplexMatrix R = Qx - Qy * (Qy.adjoint() * Qx);
  if (R.size() == 0)
  {
    return 0.0;
  }
  const double s = singular_values(R)(0);
  return std::asin(std::min(1.0, s));
}

}  // namespace rsrr::linalg
