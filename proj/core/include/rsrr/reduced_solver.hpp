// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "rsrr/chebyshev.hpp"
#include "rsrr/contour.hpp"
#include "rsrr/linalg.hpp"
#include "rsrr/nep_problem.hpp"

namespace rsrr
{

// Small k_S x k_S matrix function T_S(z), either in explicit sum form
// sum_j C_j f_j(z) or as a Chebyshev interpolant.
class ReducedNep
{
public:
  struct SumForm
  {
    std::vector<ComplexMatrix> coefficients;
    std::vector<ScalarFunction> functions;
  };

  explicit ReducedNep(SumForm form);
  explicit ReducedNep(ChebyshevMatrixPoly poly);

  /// Coefficients S^H T_j S of a sum-form problem.
  static ReducedNep project(const SumFormNep &problem, const ComplexMatrix &S);

  Index dimension() const { return k_; }
  bool is_chebyshev() const { return std::holds_alternative<ChebyshevMatrixPoly>(form_); }

  ComplexMatrix evaluate(Complex z) const;
  ComplexMatrix derivative(Complex z) const;

  const std::variant<SumForm, ChebyshevMatrixPoly> &form() const { return form_; }

private:
  std::variant<SumForm, ChebyshevMatrixPoly> form_;
  std::optional<ChebyshevMatrixPoly> derivative_poly_;
  Index k_ = 0;
};

// Contour moments A_alpha = (1/2 pi i) * contour integral of ((z - shift)/scale)^alpha T_S(z)^{-1},
// alpha = 0..2K-1, plus the winding-number quadrature computed from the same inverses.
struct MomentSet
{
  std::vector<ComplexMatrix> A;
  Complex shift;
  double scale = 1.0;
  Index N_S = 0;
  Index K = 0;
  Complex winding{0.0, 0.0};
  std::vector<std::size_t> perturbed_nodes;
};

enum class CountStrategy
{
  Agreement,  // winding and gap counts coincide
  Winding,    // gap ratio below tol_gap
  Gap,        // winding non-integer, gap accepted
  Residual,   // counts disagree; the extraction with smaller residual is kept
};

std::string to_string(CountStrategy s);

struct EigencountReport
{
  Complex winding{0.0, 0.0};
  Index winding_count = 0;
  bool winding_integral = false;
  std::optional<Index> gap_index;
  double gap_ratio = 0.0;
  Index chosen = 0;
  CountStrategy strategy = CountStrategy::Agreement;
  std::vector<Index> candidates;  // two entries when the counts disagree
};

/// Moments on contour.moment_rule(N_S). Each node is inverted densely; a singular node is
/// moved once by 1e-8 rho along the tangent, and throws SingularMatrix if still singular.
/// Throws InvalidParameter unless K >= 1 and N_S >= 2K.
MomentSet reduced_moments(const ReducedNep &T_S, const Contour &contour, Index N_S, Index K);

/// H = [A_{i+j}], H_shift = [A_{i+j+1}], i, j = 0..K-1.
std::pair<ComplexMatrix, ComplexMatrix> hankel_pencil(const MomentSet &M);

/// Winding count from the moment pass together with the largest ratio
/// sigma_j / sigma_{j+1} of the Hankel singular values (small singular values are floored
/// at 1e-16 sigma_1). Throws NonIntegerWinding when the winding number is more than 0.1
/// from an integer and no gap reaches tol_gap.
EigencountReport count_eigenvalues(const MomentSet &M, const RealVector &hankel_singular_values,
                                   double tol_gap);

/// Same, recomputing the winding quadrature with N_S nodes.
EigencountReport count_eigenvalues(const ReducedNep &T_S, const Contour &contour, Index N_S,
                                   const linalg::SvdResult &H_svd, double tol_gap);

struct ReducedEigenpairs
{
  std::vector<Complex> values;
  ComplexMatrix vectors;                 // k_S x m, unit columns
  std::vector<Complex> discarded;        // Ritz values outside the contour
};

/// Truncates the Hankel SVD to count triplets, eigendecomposes A = V0^H H_shift W0 Sigma0^{-1},
/// and maps back lambda = rho lambda' + gamma, g = H_r W0 Sigma0^{-1} g'. Values outside the
/// contour are moved to `discarded`. Throws RankCollapse if sigma_count / sigma_1 < 1e-15.
ReducedEigenpairs extract_eigenpairs(const MomentSet &M, const linalg::SvdResult &H_svd,
                                     const ComplexMatrix &H_shift, Index count,
                                     const Contour &contour);

struct ReducedSolution
{
  std::vector<Complex> values;  // sorted by (Re, Im)
  ComplexMatrix vectors;
  std::vector<double> residuals;  // ||T_S(lambda) g|| / ||g||
  std::vector<Complex> discarded;
  EigencountReport count;
  RealVector hankel_singular_values;
  std::vector<std::size_t> perturbed_nodes;
};

/// Modified block Sakurai-Sugiura solve of the reduced problem.
ReducedSolution solve_reduced(const ReducedNep &T_S, const Contour &contour, Index N_S, Index K,
                              double tol_gap);

}  // namespace rsrr
