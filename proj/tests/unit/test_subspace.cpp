// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include <Eigen/Eigenvalues>

#include "rsrr/errors.hpp"
#include "rsrr/linalg.hpp"
#include "rsrr/problems.hpp"
#include "rsrr/subspace.hpp"
#include "support/helpers.hpp"

using namespace rsrr;

namespace
{

SparseMatrix sparse(const ComplexMatrix &A)
{
  return A.sparseView();
}

// T(z) = z I - D for a diagonal D.
SumFormNep shifted_diagonal(const ComplexVector &d)
{
  const Index n = d.size();
  std::vector<SumFormNep::Term> terms;
  terms.push_back({sparse(-ComplexMatrix(d.asDiagonal())), ScalarFunction::constant(), "D"});
  terms.push_back({sparse(ComplexMatrix::Identity(n, n)), ScalarFunction::power(1), "I"});
  return SumFormNep(std::move(terms));
}

// Eigenvector blocks of A for eigenvalues inside the unit circle: X_in and rows of X^{-1}.
std::pair<ComplexMatrix, ComplexMatrix> interior_spectral_data(const ComplexMatrix &A)
{
  Eigen::ComplexEigenSolver<ComplexMatrix> es(A);
  const ComplexMatrix X = es.eigenvectors();
  const ComplexMatrix Y = X.inverse();
  std::vector<Index> inside;
  for (Index k = 0; k < A.rows(); k++)
  {
    if (std::abs(es.eigenvalues()(k)) < 1.0)
    {
      inside.push_back(k);
    }
  }
  ComplexMatrix Xin(A.rows(), static_cast<Index>(inside.size()));
  ComplexMatrix Yin(static_cast<Index>(inside.size()), A.rows());
  for (std::size_t k = 0; k < inside.size(); k++)
  {
    Xin.col(static_cast<Index>(k)) = X.col(inside[k]);
    Yin.row(static_cast<Index>(k)) = Y.row(inside[k]);
  }
  return {Xin, Yin};
}

}  // namespace

TEST_CASE("probe matrix")
{
  const auto p = make_probe(20, 3, 11);
  CHECK(p.U.rows() == 20);
  CHECK(p.U.cols() == 3);
  CHECK(p.L == 3);
  const auto q = make_probe(20, 3, 11);
  CHECK((p.U.array() == q.U.array()).all());
  CHECK((p.U - make_probe(20, 3, 12).U).norm() > 0.0);
  const RealVector s = linalg::singular_values(p.U);
  CHECK(s(2) >= 1e-8 * s(0));
  CHECK(p.U.imag().norm() > 0.0);
  CHECK_THROWS_AS(make_probe(2, 3, 1), InvalidParameter);
  CHECK_THROWS_AS(make_probe(5, 0, 1), InvalidParameter);
}

TEST_CASE("diagonal resolvent block")
{
  ComplexVector d(2);
  d << 1.0, 2.0;
  const auto T = shifted_diagonal(d);
  const ProbeMatrix probe{ComplexMatrix::Identity(2, 2), 2, 0};
  const std::vector<Complex> nodes{3.0};
  const ComplexMatrix S = build_sampling_matrix(T, nodes, probe);
  ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
  expected(0, 0) = 0.5;
  expected(1, 1) = 1.0;
  CHECK((S - expected).norm() < 1e-15);
}

TEST_CASE("single node single probe is one column")
{
  const auto oracle = problems::make_linear_oracle(10, 3, 2);
  const auto T = problems::make_linear_pencil(oracle.A);
  const auto probe = make_probe(10, 1, 4);
  const std::vector<Complex> nodes{Complex(0.3, 1.1)};
  const ComplexMatrix S = build_sampling_matrix(T, nodes, probe);
  REQUIRE(S.cols() == 1);
  const ComplexMatrix T0 = oracle.A - nodes[0] * ComplexMatrix::Identity(10, 10);
  CHECK(test::rel_diff(S, T0.partialPivLu().solve(probe.U)) < 1e-12);
}

TEST_CASE("sampling span contains the interior invariant subspace")
{
  const auto oracle = problems::make_linear_oracle(30, 6, 3);
  const auto T = problems::make_linear_pencil(oracle.A);
  const auto rule = ellipse_trapezoid(0.0, 1.0, 1.0, 16);
  const auto probe = make_probe(30, 2, 5);
  const ComplexMatrix Shat = build_sampling_matrix(T, rule.nodes, probe);
  CHECK(Shat.cols() == 32);
  const auto [Xin, Yin] = interior_spectral_data(oracle.A);
  REQUIRE(Xin.cols() == 6);
  const auto basis = orthonormal_basis(Shat);
  CHECK(linalg::max_principal_angle(Xin, basis.S) <= 1e-8);
}

TEST_CASE("singular node is reported and perturbed")
{
  ComplexVector d(2);
  d << 1.0, 2.0;
  const auto T = shifted_diagonal(d);
  const ProbeMatrix probe{ComplexMatrix::Identity(2, 2), 2, 0};
  const std::vector<Complex> nodes{3.0, 1.0};
  try
  {
    build_sampling_matrix(T, nodes, probe);
    FAIL("expected SingularMatrix");
  }
  catch (const SingularMatrix &e)
  {
    REQUIRE(e.node().has_value());
    CHECK(*e.node() == 1);
  }
  QuadratureSet rule;
  rule.nodes = nodes;
  rule.weights = {1.0, 1.0};
  rule.tangents = {Complex(0.0, 1.0), Complex(0.0, 1.0)};
  std::vector<std::size_t> moved;
  const ComplexMatrix S = build_sampling_matrix(T, rule, probe, 1e-8, &moved);
  CHECK(moved == std::vector<std::size_t>{1});
  CHECK(S.allFinite());
}

TEST_CASE("zeroth moment approximates the spectral projector")
{
  const auto oracle = problems::make_linear_oracle(40, 8, 9);
  const auto T = problems::make_linear_pencil(oracle.A);
  const auto rule = ellipse_trapezoid(0.0, 1.0, 1.0, 64);
  const auto probe = make_probe(40, 3, 1);
  const ComplexMatrix M0 =
      build_moment_matrix(T, rule, probe, 1, MomentBasis::Monomial, 0.0, 1.0);
  const auto [Xin, Yin] = interior_spectral_data(oracle.A);
  // T(z) = A - zI gives T^{-1} = -sum x y^H / (z - lambda): the contour integral is -P.
  const ComplexMatrix expected = -Xin * (Yin * probe.U);
  CHECK(test::rel_diff(M0, expected) < 1e-8);
}

TEST_CASE("scalar Cauchy moment")
{
  ComplexVector d(1);
  d << Complex(0.2, -0.1);
  const auto T = shifted_diagonal(d);
  const ProbeMatrix probe{ComplexMatrix::Ones(1, 1), 1, 0};
  const auto rule = ellipse_trapezoid(0.0, 1.0, 1.0, 64);
  const ComplexMatrix M = build_moment_matrix(T, rule, probe, 3, MomentBasis::Monomial, 0.0, 1.0);
  CHECK(std::abs(M(0, 0) - 1.0) < 1e-12);
  CHECK(std::abs(M(0, 1) - d(0)) < 1e-12);
  CHECK(std::abs(M(0, 2) - d(0) * d(0)) < 1e-12);
}

TEST_CASE("moment span lies in the sampling span")
{
  const auto oracle = problems::make_linear_oracle(80, 10, 4);
  const auto T = problems::make_linear_pencil(oracle.A);
  const auto rule = ellipse_trapezoid(0.0, 1.0, 1.0, 16);
  const auto probe = make_probe(80, 2, 8);
  const ComplexMatrix Shat = build_sampling_matrix(T, rule, probe, 0.0);
  const ComplexMatrix S = linalg::svd(Shat).U;
  for (auto basis : {MomentBasis::Monomial, MomentBasis::Chebyshev})
  {
    const ComplexMatrix M = build_moment_matrix(T, rule, probe, 16, basis, 0.0, 1.0);
    CHECK((M - S * (S.adjoint() * M)).norm() <= 1e-10 * M.norm());
    const ComplexMatrix M2 = moment_matrix_from_samples(Shat, rule, 2, 16, basis, 0.0, 1.0);
    CHECK(test::rel_diff(M, M2) < 1e-13);
    // Rank dominance at the same threshold.
    const Index rank_S = linalg::numerical_rank(linalg::singular_values(Shat), 1e-14);
    const Index rank_M = linalg::numerical_rank(linalg::singular_values(M), 1e-14);
    CHECK(rank_S >= rank_M);
  }
}

TEST_CASE("orthonormal basis")
{
  const ComplexMatrix Q = linalg::orthonormalize(test::random_matrix(12, 4, 3));
  const auto b = orthonormal_basis(Q);
  CHECK(b.k_S == 4);
  CHECK(linalg::max_principal_angle(b.S, Q) < 1e-12);
  CHECK((b.S.adjoint() * b.S - ComplexMatrix::Identity(4, 4)).norm() < 1e-12);

  const ComplexMatrix u = test::random_matrix(9, 1, 4);
  ComplexMatrix dup(9, 2);
  dup << u, 2.0 * u;
  CHECK(orthonormal_basis(dup).k_S == 1);

  ComplexVector decay(10);
  for (Index j = 0; j < 10; j++)
  {
    decay(j) = std::pow(10.0, -2.0 * j);
  }
  const ComplexMatrix X = test::random_matrix(15, 10, 6) * decay.asDiagonal();
  const auto t = orthonormal_basis(X, 1e-8);
  REQUIRE(t.k_S < 10);
  CHECK(t.singular_values(t.k_S - 1) >= 1e-8 * t.singular_values(0));
  CHECK(t.singular_values(t.k_S) < 1e-8 * t.singular_values(0));
  CHECK(t.singular_values.size() == 10);

  CHECK_THROWS_AS(orthonormal_basis(ComplexMatrix::Zero(5, 3)), EmptyBasis);
  CHECK_THROWS_AS(orthonormal_basis(Q, 0.0), InvalidParameter);
  CHECK_THROWS_AS(orthonormal_basis(Q, 1.0), InvalidParameter);
}

TEST_CASE("node order does not change the span")
{
  const auto oracle = problems::make_linear_oracle(40, 6, 12);
  const auto T = problems::make_linear_pencil(oracle.A);
  const auto rule = ellipse_trapezoid(0.0, 1.0, 1.0, 12);
  const auto probe = make_probe(40, 2, 2);
  std::vector<Complex> reversed(rule.nodes.rbegin(), rule.nodes.rend());
  const ComplexMatrix A = build_sampling_matrix(T, rule.nodes, probe);
  const ComplexMatrix B = build_sampling_matrix(T, reversed, probe);
  const Index N = 12, L = 2;
  for (Index i = 0; i < N; i++)
  {
    CHECK((A.middleCols(i * L, L) - B.middleCols((N - 1 - i) * L, L)).norm() == 0.0);
  }
  const auto a = orthonormal_basis(A), b = orthonormal_basis(B);
  CHECK(a.k_S == b.k_S);
  CHECK(linalg::max_principal_angle(a.S, b.S) <= 1e-10);
}

TEST_CASE("adding nodes never loses rank")
{
  const auto oracle = problems::make_linear_oracle(60, 10, 13);
  const auto T = problems::make_linear_pencil(oracle.A);
  const auto rule = ellipse_trapezoid(0.0, 1.0, 1.0, 20);
  const auto probe = make_probe(60, 1, 3);
  double prev_sigma = 0.0;
  Index prev_rank = 0;
  for (std::size_t m = 1; m <= rule.size(); m++)
  {
    const std::vector<Complex> subset(rule.nodes.begin(), rule.nodes.begin() + m);
    const RealVector s = linalg::singular_values(build_sampling_matrix(T, subset, probe));
    const Index rank = linalg::numerical_rank(s, 1e-14);
    CHECK(s(0) >= prev_sigma * (1.0 - 1e-14));
    CHECK(rank >= prev_rank);
    prev_sigma = s(0);
    prev_rank = rank;
  }
}

TEST_CASE("Vandermonde rank experiment")
{
  std::vector<double> eigs(50);
  for (int i = 0; i < 50; i++)
  {
    eigs[i] = -0.9 + 1.8 * i / 49.0;
  }
  const auto mono = vandermonde_rank_experiment(eigs, 200, 1e-12, MomentBasis::Monomial);
  REQUIRE(mono.size() == 200);
  Index max_rank = 0;
  for (const auto &row : mono)
  {
    max_rank = std::max(max_rank, row.rank);
  }
  CHECK(max_rank <= 35);
  CHECK(mono.front().K_prime == 1);
  CHECK(mono.front().rank == 1);

  const auto cheb = vandermonde_rank_experiment(eigs, 100, 1e-12, MomentBasis::Chebyshev);
  CHECK(cheb.back().rank == 50);
  for (const auto &row : cheb)
  {
    CHECK(row.rank <= std::min<Index>(row.K_prime, 50));
  }

  const std::vector<double> one{0.5};
  for (const auto &row : vandermonde_rank_experiment(one, 20, 1e-12, MomentBasis::Monomial))
  {
    CHECK(row.rank == 1);
  }
  std::ostringstream csv;
  write_rank_csv(csv, vandermonde_rank_experiment(one, 2, 1e-12, MomentBasis::Chebyshev));
  CHECK(csv.str() == "K_prime,rank\n1,1\n2,1\n");
  CHECK(to_string(MomentBasis::Chebyshev) == "chebyshev");
  CHECK(moment_basis_from_string("monomial") == MomentBasis::Monomial);
  CHECK_THROWS_AS(moment_basis_from_string("legendre"), InvalidParameter);
}

TEST_CASE("well resolved heuristic")
{
  SubspaceBasis b;
  b.S = ComplexMatrix::Identity(4, 2);
  b.k_S = 2;
  b.singular_values = RealVector::Ones(3);
  CHECK(!b.well_resolved());
  b.singular_values(2) = 1e-15;
  CHECK(b.well_resolved());
}
