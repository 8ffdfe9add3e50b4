// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rsrr/contour.hpp"
#include "rsrr/errors.hpp"
#include "rsrr/nep_problem.hpp"
#include "rsrr/reduced_solver.hpp"
#include "rsrr/subspace.hpp"

namespace rsrr
{

enum class ReductionMode
{
  Auto,         // explicit sum for SumFormNep, Chebyshev otherwise
  ExplicitSum,
  Chebyshev,
};

std::string to_string(ReductionMode mode);
ReductionMode reduction_mode_from_string(const std::string &name);

struct RsrrConfig
{
  Contour contour = Contour::ellipse({0.0, 0.0}, 1.0, 1.0);
  Index L = 2;
  Index N = 100;  // rectangles: 0 or the node count of the per-side layout
  double delta = 1e-14;
  Index K = 2;
  Index N_S = 1000;
  double tol_gap = 1e3;
  double residual_flag = 1e-4;
  double residual_target = 1e-6;
  std::uint64_t seed = 1;
  ReductionMode mode = ReductionMode::Auto;
  Index cheb_degree = 40;
  // Throw ResidualFailure when any pair exceeds residual_flag.
  bool strict = true;

  // Moment scheme only. K_prime = 0 means K' = number of sampling nodes.
  Index K_prime = 0;
  MomentBasis moment_basis = MomentBasis::Monomial;

  /// Throws InvalidParameter naming the offending field.
  void validate() const;
};

struct Eigenpair
{
  Complex lambda;
  ComplexVector v;  // unit 2-norm, largest component real-positive
  double residual = 0.0;          // against the full T
  double reduced_residual = 0.0;  // ||T_S(lambda) g|| / ||g||
  // ||T(lambda) v|| / (sum_j |f_j(lambda)| ||T_j||_1 ||v||); sum-form problems only.
  std::optional<double> scaled_residual;
};

struct StageTiming
{
  std::string stage;
  double seconds = 0.0;
};

struct EigenSolution
{
  std::string scheme;  // "rsrr" or "ssrr"
  std::vector<Eigenpair> pairs;
  EigencountReport count;
  RealVector source_singular_values;
  Index k_S = 0;
  bool well_resolved = false;
  ReductionMode reduction = ReductionMode::ExplicitSum;
  std::optional<double> chebyshev_tail;
  RealVector hankel_singular_values;
  std::vector<Complex> discarded;
  std::vector<std::size_t> perturbed_sampling_nodes;
  std::vector<std::size_t> perturbed_moment_nodes;
  std::vector<std::size_t> flagged;  // indices into pairs with residual > residual_flag
  std::vector<std::string> notices;
  std::vector<StageTiming> timings;

  std::vector<Complex> eigenvalues() const;
  std::vector<double> residuals() const;
  double max_residual() const;
};

class ResidualFailure : public Error
{
public:
  ResidualFailure(const std::string &what, EigenSolution solution)
    : Error(what), solution_(std::move(solution))
  {
  }

  const EigenSolution &solution() const { return solution_; }

private:
  EigenSolution solution_;
};

/// Resolvent sampling + Rayleigh-Ritz. Every returned pair is checked against the original
/// problem; pairs above residual_flag are listed in `flagged` (and raise ResidualFailure
/// when config.strict is set).
EigenSolution solve_rsrr(const NepProblem &problem, const RsrrConfig &config);

/// Same pipeline with the basis taken from the moment matrix [M_0 | ... | M_{K'-1}].
EigenSolution solve_ssrr(const NepProblem &problem, const RsrrConfig &config);

/// ||T(lambda_j) v_j|| / ||v_j|| for each column of V.
std::vector<double> verify_residuals(const NepProblem &problem, const std::vector<Complex> &lambdas,
                                     const ComplexMatrix &V);

/// ||T(lambda_j) v_j|| / (sum_i |f_i(lambda_j)| ||T_i||_1 ||v_j||).
std::vector<double> scaled_residuals(const SumFormNep &problem, const std::vector<Complex> &lambdas,
                                     const ComplexMatrix &V);

}  // namespace rsrr
