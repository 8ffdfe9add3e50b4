// SPDX-License-Identifier: Apache-2.0

#include "rsrr/problems.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "rsrr/errors.hpp"
#include "rsrr/linalg.hpp"

namespace rsrr::problems
{

namespace
{

using Triplet = Eigen::Triplet<Complex>;

SparseMatrix from_triplets(Index n, const std::vector<Triplet> &entries)
{
  SparseMatrix A(n, n);
  A.setFromTriplets(entries.begin(), entries.end());
  A.makeCompressed();
  return A;
}

// scale * tridiag(off, mid, off) with the (n, n) entry replaced by scale * corner.
SparseMatrix scaled_tridiag(Index n, double scale, double off, double mid, double corner)
{
  std::vector<Triplet> e;
  e.reserve(static_cast<std::size_t>(3 * n));
  for (Index i = 0; i < n; i++)
  {
    e.emplace_back(i, i, scale * (i == n - 1 ? corner : mid));
    if (i + 1 < n)
    {
      e.emplace_back(i + 1, i, scale * off);
      e.emplace_back(i, i + 1, scale * off);
    }
  }
  return from_triplets(n, e);
}

SparseMatrix corner_unit(Index n, Complex value)
{
  return from_triplets(n, {Triplet(n - 1, n - 1, value)});
}

template <class MatA, class MatB>
void check_same_size(const MatA &ref, const MatB &A, const char *name)
{
  if (A.rows() != ref.rows() || A.cols() != ref.cols() || ref.rows() != ref.cols())
  {
    throw DimensionMismatch(std::string("coefficient matrix ") + name + " is " +
                            std::to_string(A.rows()) + "x" + std::to_string(A.cols()) +
                            ", expected " + std::to_string(ref.rows()) + "x" +
                            std::to_string(ref.cols()));
  }
}

SparseMatrix to_sparse(const ComplexMatrix &A)
{
  SparseMatrix S = A.sparseView();
  S.makeCompressed();
  return S;
}

}  // namespace

SumFormNep make_acoustic_1d(Index n, Complex zeta)
{
  if (n < 2)
  {
    throw InvalidParameter("acoustic-1d: n must be >= 2");
  }
  if (zeta == 0.0)
  {
    throw InvalidParameter("acoustic-1d: impedance zeta must be nonzero");
  }
  constexpr double pi = std::numbers::pi;
  const double dn = static_cast<double>(n);

  std::vector<Triplet> m;
  for (Index i = 0; i < n; i++)
  {
    m.emplace_back(i, i, -(4.0 * pi * pi / dn) * (i == n - 1 ? 0.5 : 1.0));
  }
  std::vector<SumFormNep::Term> terms;
  terms.push_back({from_triplets(n, m), ScalarFunction::power(2), "M"});
  terms.push_back({corner_unit(n, 2.0 * pi * 1.0i / zeta), ScalarFunction::power(1), "C"});
  terms.push_back({scaled_tridiag(n, dn, -1.0, 2.0, 1.0), ScalarFunction::constant(), "K"});
  return SumFormNep(std::move(terms), "acoustic1d");
}

SumFormNep make_loaded_string(Index n, StringEnd end)
{
  if (n < 2)
  {
    throw InvalidParameter("loaded-string: n must be >= 2");
  }
  const double dn = static_cast<double>(n);
  std::vector<SumFormNep::Term> terms;
  const double t1_corner = end == StringEnd::Nlevp ? 1.0 : 2.0;
  terms.push_back(
      {scaled_tridiag(n, dn, -1.0, 2.0, t1_corner), ScalarFunction::constant(), "T1"});
  terms.push_back({corner_unit(n, 1.0), ScalarFunction::rational(1.0, -1.0), "T2"});
  terms.push_back({scaled_tridiag(n, 1.0 / (6.0 * dn), 1.0, 4.0, 2.0),
                   ScalarFunction::power(1, -1.0), "T3"});
  return SumFormNep(std::move(terms), "string");
}

SumFormNep make_gun_form(const ComplexMatrix &K_s, const ComplexMatrix &M, const ComplexMatrix &W1,
                         const ComplexMatrix &W2, double sigma1, double sigma2)
{
  return make_gun_form(to_sparse(K_s), to_sparse(M), to_sparse(W1), to_sparse(W2), sigma1, sigma2);
}

SumFormNep make_gun_form(const SparseMatrix &K_s, const SparseMatrix &M, const SparseMatrix &W1,
                         const SparseMatrix &W2, double sigma1, double sigma2)
{
  check_same_size(K_s, K_s, "K");
  check_same_size(K_s, M, "M");
  check_same_size(K_s, W1, "W1");
  check_same_size(K_s, W2, "W2");
  if (sigma1 < 0.0 || sigma2 < 0.0)
  {
    throw InvalidParameter("gun: sigma1 and sigma2 must be nonnegative");
  }
  std::vector<SumFormNep::Term> terms;
  terms.push_back({K_s, ScalarFunction::constant(), "K"});
  terms.push_back({M, ScalarFunction::power(2, -1.0), "M"});
  terms.push_back({W1, ScalarFunction::shifted_sqrt(sigma1), "W1"});
  terms.push_back({W2, ScalarFunction::shifted_sqrt(sigma2), "W2"});
  return SumFormNep(std::move(terms), "gun");
}

ScalarFunction biot_modulus(double G_inf, const std::vector<double> &a, const std::vector<double> &b,
                            bool leading_one)
{
  if (a.size() != b.size() || a.empty())
  {
    throw InvalidParameter("biot: a and b must be nonempty and of equal length");
  }
  ScalarFunction G;
  if (leading_one)
  {
    G += ScalarFunction::constant(G_inf);
  }
  for (std::size_t k = 0; k < a.size(); k++)
  {
    if (!(b[k] > 0.0))
    {
      throw InvalidParameter("biot: relaxation rates b_k must be positive");
    }
    G += ScalarFunction::rational(G_inf * a[k], b[k]);
  }
  return G;
}

SumFormNep make_biot_damped(const ComplexMatrix &M, const ComplexMatrix &K_v,
                            const ComplexMatrix &K_s, double G_inf, const std::vector<double> &a,
                            const std::vector<double> &b, bool leading_one)
{
  return make_biot_damped(to_sparse(M), to_sparse(K_v), to_sparse(K_s), G_inf, a, b, leading_one);
}

SumFormNep make_biot_damped(const SparseMatrix &M, const SparseMatrix &K_v, const SparseMatrix &K_s,
                            double G_inf, const std::vector<double> &a, const std::vector<double> &b,
                            bool leading_one)
{
  check_same_size(M, M, "M");
  check_same_size(M, K_v, "Kv");
  check_same_size(M, K_s, "Ks");
  std::vector<SumFormNep::Term> terms;
  terms.push_back({M, ScalarFunction::power(2), "M"});
  terms.push_back({K_v, biot_modulus(G_inf, a, b, leading_one), "Kv"});
  terms.push_back({K_s, ScalarFunction::constant(), "Ks"});
  return SumFormNep(std::move(terms), "biot");
}

SumFormNep make_linear_pencil(const ComplexMatrix &A)
{
  if (A.rows() != A.cols() || A.rows() < 1)
  {
    throw DimensionMismatch("linear pencil: A must be square");
  }
  const Index n = A.rows();
  SparseMatrix I(n, n);
  I.setIdentity();
  std::vector<SumFormNep::Term> terms;
  terms.push_back({to_sparse(A), ScalarFunction::constant(), "A"});
  terms.push_back({I, ScalarFunction::power(1, -1.0), "I"});
  return SumFormNep(std::move(terms), "linear-pencil", SumFormNep::SolveStrategy::Dense);
}

LinearOracle make_linear_oracle(Index n, Index inside, std::uint64_t seed)
{
  if (n < 1 || inside < 0 || inside > n)
  {
    throw InvalidParameter("linear oracle: need 0 <= inside <= n");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal;
  constexpr double two_pi = 2.0 * std::numbers::pi;

  ComplexVector lambda(n);
  for (Index i = 0; i < n; i++)
  {
    double r;
    if (i < inside)
    {
      r = 0.6 * std::sqrt(unit(rng));
    }
    else
    {
      r = 1.6 + 1.4 * unit(rng);
    }
    lambda(i) = std::polar(r, two_pi * unit(rng));
  }
  ComplexMatrix X(n, n);
  for (Index j = 0; j < n; j++)
  {
    for (Index i = 0; i < n; i++)
    {
      X(i, j) = Complex(normal(rng), normal(rng));
    }
  }
  const ComplexMatrix Xinv = linalg::solve_dense(X, ComplexMatrix::Identity(n, n));
  return {X * lambda.asDiagonal() * Xinv, lambda.head(inside), lambda.tail(n - inside)};
}

}  // namespace rsrr::problems
