// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rsrr/types.hpp"

namespace rsrr::linalg
{

struct SvdResult
{
  ComplexMatrix U;
  RealVector singular_values;  // nonincreasing
  ComplexMatrix V;
};

struct EigResult
{
  ComplexVector values;
  ComplexMatrix vectors;  // column j pairs with values(j)
};

/// Solve A X = B by LU with partial pivoting.
///
/// Throws SingularMatrix when a pivot is zero or negligible relative to the largest pivot
/// (a relative size below machine epsilon), and DimensionMismatch on incompatible shapes.
ComplexMatrix solve_dense(const ComplexMatrix &A, const ComplexMatrix &B);

/// Thin SVD, A = U diag(s) V^H with U m x min(m,n) and V n x min(m,n).
SvdResult svd(const ComplexMatrix &A);

/// Singular values only.
RealVector singular_values(const ComplexMatrix &A);

/// Eigenvalues and eigenvectors of a general square matrix. No ordering.
EigResult eig_dense(const ComplexMatrix &A);

/// Count of singular values >= tol * sigma_1. Zero for an all-zero spectrum.
Index numerical_rank(const RealVector &singular_values, double tol);

/// Largest principal angle (radians) between the column spans of X and Y. Both are
/// orthonormalised internally; the spans must have the same dimension for a symmetric
/// measure, otherwise the angle measures how far span(X) sits outside span(Y).
double max_principal_angle(const ComplexMatrix &X, const ComplexMatrix &Y);

/// Orthonormal basis of the column span of A (thin, rank-revealing, threshold tol * sigma_1).
ComplexMatrix orthonormalize(const ComplexMatrix &A, double tol = 1e-14);

}  // namespace rsrr::linalg
