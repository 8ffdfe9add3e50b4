// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rsrr/contour.hpp"
#include "rsrr/nep_problem.hpp"

namespace rsrr
{

// Random n x L matrix used to probe the resolvent.
struct ProbeMatrix
{
  ComplexMatrix U;
  Index L = 0;
  std::uint64_t seed = 0;
};

/// Complex standard normal entries (independent real and imaginary parts) from mt19937_64.
/// Throws InvalidParameter if the columns come out numerically dependent
/// (sigma_L < 1e-8 sigma_1), which only happens for L > n.
ProbeMatrix make_probe(Index n, Index L, std::uint64_t seed);

struct SubspaceBasis
{
  ComplexMatrix S;              // n x k_S, orthonormal columns
  RealVector singular_values;   // full spectrum of the source matrix
  Index k_S = 0;
  double delta = 1e-14;

  /// sigma_1 / sigma_last >= 1e14 (or k_S equals n), the resolution heuristic for N.
  bool well_resolved() const;
};

enum class MomentBasis
{
  Monomial,
  Chebyshev,
};

/// S_hat = [T(z_0)^{-1} U | ... | T(z_{N-1})^{-1} U], block columns in node order. A singular
/// solve throws SingularMatrix carrying the node index.
ComplexMatrix build_sampling_matrix(const NepProblem &problem, std::span<const Complex> nodes,
                                    const ProbeMatrix &probe);

/// As above on the nodes of a quadrature rule. A node that hits a singular T(z) is moved
/// once by perturb_step along the contour tangent and retried; the indices of moved nodes
/// are appended to `perturbed` when given.
ComplexMatrix build_sampling_matrix(const NepProblem &problem, const QuadratureSet &rule,
                                    const ProbeMatrix &probe, double perturb_step,
                                    std::vector<std::size_t> *perturbed = nullptr);

/// M_hat_alpha = sum_i w_i p_alpha(z_i) Y_i from already sampled blocks Y_i (the block
/// columns of `samples`), with p_alpha(z) = x^alpha or tau_alpha(x), x = (z - shift)/scale.
ComplexMatrix moment_matrix_from_samples(const ComplexMatrix &samples, const QuadratureSet &rule,
                                         Index L, Index K_prime, MomentBasis basis, Complex shift,
                                         double scale);

/// M_hat = [M_hat_0 | ... | M_hat_{K'-1}], n x (K' L).
ComplexMatrix build_moment_matrix(const NepProblem &problem, const QuadratureSet &rule,
                                  const ProbeMatrix &probe, Index K_prime, MomentBasis basis,
                                  Complex shift, double scale, double perturb_step = 0.0);

/// Left singular vectors with sigma_i >= delta sigma_1. Throws EmptyBasis for a numerically
/// zero source and InvalidParameter for delta outside (0, 1).
SubspaceBasis orthonormal_basis(const ComplexMatrix &source, double delta = 1e-14);

struct RankRow
{
  Index K_prime = 0;
  Index rank = 0;
};

/// Numerical rank of the generalized Vandermonde matrix B_{ik} = p_k(lambda_i),
/// k = 0..K'-1, for every K' in 1..K_max at threshold tol * sigma_1.
std::vector<RankRow> vandermonde_rank_experiment(std::span<const double> eigs, Index K_max,
                                                 double tol, MomentBasis basis);

/// CSV with header "K_prime,rank".
void write_rank_csv(std::ostream &out, const std::vector<RankRow> &rows);

std::string to_string(MomentBasis basis);
MomentBasis moment_basis_from_string(const std::string &name);

}  // namespace rsrr
