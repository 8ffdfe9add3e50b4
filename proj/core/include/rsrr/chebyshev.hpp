// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <vector>

#include "rsrr/nep_problem.hpp"
#include "rsrr/types.hpp"

namespace rsrr
{

// P(z) = sum_{j=0}^{d} P_j tau_j(m(z)), m the affine map of [lo, hi] onto [-1, 1].
// Coefficients are the true expansion coefficients (P_0 already halved).
struct ChebyshevMatrixPoly
{
  std::vector<ComplexMatrix> coefficients;
  double lo = -1.0;
  double hi = 1.0;

  Index degree() const { return static_cast<Index>(coefficients.size()) - 1; }
  Index dimension() const { return coefficients.empty() ? 0 : coefficients.front().rows(); }

  Complex map(Complex z) const { return (2.0 * z - (lo + hi)) / (hi - lo); }

  /// Clenshaw recurrence at complex z.
  ComplexMatrix evaluate(Complex z) const;

  /// dP/dz as a Chebyshev series of degree d - 1 on the same interval.
  ChebyshevMatrixPoly derivative() const;

  /// ||P_d||_F / max_j ||P_j||_F. Large values flag an under-resolved interpolant.
  double tail_ratio() const;
  /// Copy without the trailing coefficients whose norm is at most rel_tol times the largest.
  /// Rounding noise in those coefficients grows like |tau_j| away from the interval.
  ChebyshevMatrixPoly chopped(double rel_tol) const;
};

using MatrixSampler = std::function<ComplexMatrix(Complex)>;

/// First-kind Chebyshev points x_j = cos((j + 1/2) pi / (d + 1)), j = 0..d, mapped to [lo, hi].
std::vector<double> chebyshev_nodes(Index d, double lo, double hi);

/// Interpolant through sampler at the d + 1 Chebyshev points. Sampler calls run in parallel.
ChebyshevMatrixPoly interpolate_matrix(const MatrixSampler &sampler, Index d, double lo, double hi);

/// Interpolant of S^H T(z) S, projecting each sample before the transform.
ChebyshevMatrixPoly reduce_interpolant(const MatrixSampler &sampler, const ComplexMatrix &S,
                                       Index d, double lo, double hi);

/// Same, forming S^H (T(x_k) S) through NepProblem::apply so T is never assembled.
ChebyshevMatrixPoly reduce_interpolant(const NepProblem &problem, const ComplexMatrix &S, Index d,
                                       double lo, double hi);

}  // namespace rsrr
