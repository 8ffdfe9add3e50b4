// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "rsrr/nep_problem.hpp"

namespace rsrr::problems
{

/// Quadratic FE model of the 1D time-harmonic wave equation on [0, 1] with an impedance end:
/// T(z) = z^2 M + z C + K_s,
///   M   = -(4 pi^2 / n)(I - e_n e_n^T / 2),
///   C   = (2 pi i / zeta) e_n e_n^T,
///   K_s = n tridiag(-1, 2, -1) with K_s(n, n) = n.
/// Terms are labelled "M", "C" and "K".
SumFormNep make_acoustic_1d(Index n, Complex zeta);

/// String with a unit load on an elastic spring:
/// T(z) = T_1 + z/(z - 1) e_n e_n^T - z T_3,
///   T_1 = n tridiag(-1, 2, -1) with T_1(n, n) = n (Nlevp) or 2n (Displayed),
///   T_3 = (1 / 6n) tridiag(1, 4, 1) with T_3(n, n) = 2 / 6n.
/// Evaluation within 1e-12 of z = 1 throws PoleEvaluation.
enum class StringEnd
{
  Nlevp,      // free end, as generated by nlevp('loaded_string', n, 1, 1)
  Displayed,  // T_1(n, n) = 2n
};

SumFormNep make_loaded_string(Index n, StringEnd end = StringEnd::Nlevp);

/// T(z) = K_s - z^2 M + i sqrt(z^2 - sigma1^2) W1 + i sqrt(z^2 - sigma2^2) W2.
SumFormNep make_gun_form(const ComplexMatrix &K_s, const ComplexMatrix &M, const ComplexMatrix &W1,
                         const ComplexMatrix &W2, double sigma1, double sigma2);
SumFormNep make_gun_form(const SparseMatrix &K_s, const SparseMatrix &M, const SparseMatrix &W1,
                         const SparseMatrix &W2, double sigma1, double sigma2);

/// G(z) = G_inf (leading_one ? 1 : 0) + G_inf sum_k a_k z / (z + b_k).
ScalarFunction biot_modulus(double G_inf, const std::vector<double> &a,
                            const std::vector<double> &b, bool leading_one = false);

/// Viscoelastic structure: T(z) = z^2 M + G(z) K_v + K_s, with G from biot_modulus.
SumFormNep make_biot_damped(const ComplexMatrix &M, const ComplexMatrix &K_v,
                            const ComplexMatrix &K_s, double G_inf, const std::vector<double> &a,
                            const std::vector<double> &b, bool leading_one = false);
SumFormNep make_biot_damped(const SparseMatrix &M, const SparseMatrix &K_v, const SparseMatrix &K_s,
                            double G_inf, const std::vector<double> &a, const std::vector<double> &b,
                            bool leading_one = false);

/// T(z) = A - z I.
SumFormNep make_linear_pencil(const ComplexMatrix &A);

struct LinearOracle
{
  ComplexMatrix A;
  ComplexVector interior;  // eigenvalues placed inside the unit circle
  ComplexVector exterior;  // eigenvalues placed outside radius 1.6
};

/// Random n x n matrix A = X diag(lambda) X^{-1}, with `inside` eigenvalues drawn uniformly
/// from the disk |z| <= 0.6 and the rest from the annulus 1.6 <= |z| <= 3. X is complex
/// Gaussian. Deterministic in `seed`.
LinearOracle make_linear_oracle(Index n, Index inside, std::uint64_t seed);

}  // namespace rsrr::problems
