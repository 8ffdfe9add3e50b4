// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "rsrr/errors.hpp"
#include "rsrr/linalg.hpp"
#include "rsrr/problems.hpp"
#include "rsrr/reduced_solver.hpp"
#include "support/helpers.hpp"

using namespace rsrr;

namespace
{

// T_S(z) = diag(z - lambda_i).
ReducedNep linear_diagonal(const std::vector<Complex> &lambdas)
{
  const Index k = static_cast<Index>(lambdas.size());
  ComplexMatrix D = ComplexMatrix::Zero(k, k);
  for (Index i = 0; i < k; i++)
  {
    D(i, i) = -lambdas[i];
  }
  return ReducedNep(ReducedNep::SumForm{{D, ComplexMatrix::Identity(k, k)},
                                        {ScalarFunction::constant(), ScalarFunction::power(1)}});
}

// Diagonal entries (z - r1)(z - r2) / (z + 5), written in the scalar vocabulary as
// z + (R/5 - s) - (R/5) z/(z + 5) with s = r1 + r2 + 5 and R = (r1 + 5)(r2 + 5).
ReducedNep rational_diagonal(const std::vector<std::pair<Complex, Complex>> &roots)
{
  const Index k = static_cast<Index>(roots.size());
  ComplexMatrix C0 = ComplexMatrix::Zero(k, k), C2 = ComplexMatrix::Zero(k, k);
  for (Index i = 0; i < k; i++)
  {
    const auto [r1, r2] = roots[i];
    const Complex s = r1 + r2 + 5.0, R = (r1 + 5.0) * (r2 + 5.0);
    C0(i, i) = R / 5.0 - s;
    C2(i, i) = -R / 5.0;
  }
  return ReducedNep(ReducedNep::SumForm{
      {C0, ComplexMatrix::Identity(k, k), C2},
      {ScalarFunction::constant(), ScalarFunction::power(1), ScalarFunction::rational(1.0, 5.0)}});
}

std::vector<Complex> sorted(std::vector<Complex> v)
{
  std::sort(v.begin(), v.end(), [](Complex a, Complex b)
            { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
  return v;
}

}  // namespace

TEST_CASE("scalar moments")
{
  const auto circle = Contour::ellipse(Complex(1.0, 1.0), 2.0, 2.0);
  const auto centre = reduced_moments(linear_diagonal({Complex(1.0, 1.0)}), circle, 64, 1);
  REQUIRE(centre.A.size() == 2);
  CHECK(std::abs(centre.A[0](0, 0) - 1.0) < 1e-12);
  CHECK(std::abs(centre.A[1](0, 0)) < 1e-12);
  CHECK(std::abs(centre.winding - 1.0) < 1e-10);

  const auto half = reduced_moments(linear_diagonal({Complex(2.0, 1.0)}), circle, 64, 3);
  for (int alpha = 0; alpha < 6; alpha++)
  {
    CHECK(std::abs(half.A[alpha](0, 0) - std::pow(0.5, alpha)) < 1e-10);
  }
  const auto outside = reduced_moments(linear_diagonal({Complex(6.0, 1.0)}), circle, 64, 1);
  CHECK(std::abs(outside.winding) < 1e-10);
  CHECK(std::abs(outside.A[0](0, 0)) < 1e-10);

  const auto both =
      reduced_moments(linear_diagonal({Complex(0.5, 1.0), Complex(1.0, 2.0)}), circle, 64, 1);
  CHECK((both.A[0] - ComplexMatrix::Identity(2, 2)).norm() < 1e-12);
  CHECK_THROWS_AS(reduced_moments(linear_diagonal({0.0}), circle, 3, 2), InvalidParameter);
  CHECK_THROWS_AS(reduced_moments(linear_diagonal({0.0}), circle, 10, 0), InvalidParameter);
}

TEST_CASE("moments decay with the scaled spectrum")
{
  const std::vector<Complex> lambdas{Complex(0.2, 0.1), Complex(-0.4, 0.3), Complex(0.1, -0.5)};
  const auto M = reduced_moments(linear_diagonal(lambdas), Contour::ellipse(0.0, 1.0, 1.0), 128, 4);
  double lmax = 0.0;
  for (Complex l : lambdas)
  {
    lmax = std::max(lmax, std::abs(l));
  }
  for (int alpha = 0; alpha < 8; alpha++)
  {
    CHECK(M.A[alpha].norm() <= M.A[0].norm() * std::pow(lmax, alpha) * (1.0 + 1e-6));
  }
}

TEST_CASE("Hankel pencil layout")
{
  MomentSet M;
  M.K = 2;
  for (int a = 0; a < 4; a++)
  {
    M.A.push_back(ComplexMatrix::Constant(2, 2, Complex(a + 1.0)));
  }
  const auto [H, Hs] = hankel_pencil(M);
  CHECK(H.rows() == 4);
  CHECK(H(0, 0) == Complex(1.0));
  CHECK(H(0, 2) == Complex(2.0));
  CHECK(H(2, 0) == Complex(2.0));
  CHECK(H(3, 3) == Complex(3.0));
  CHECK(Hs(0, 0) == Complex(2.0));
  CHECK(Hs(3, 3) == Complex(4.0));
  CHECK((H.block(0, 2, 2, 2) - H.block(2, 0, 2, 2)).norm() == 0.0);

  MomentSet one;
  one.K = 1;
  one.A = {test::random_matrix(3, 3, 1), test::random_matrix(3, 3, 2)};
  const auto [H1, Hs1] = hankel_pencil(one);
  CHECK((H1 - one.A[0]).norm() == 0.0);
  CHECK((Hs1 - one.A[1]).norm() == 0.0);
}

TEST_CASE("eigencount on a rational diagonal problem")
{
  std::vector<std::pair<Complex, Complex>> roots;
  const std::vector<Complex> inside{Complex(0.1, 0.2), Complex(-0.5, 0.1), Complex(0.3, -0.4),
                                    Complex(-0.2, -0.3), Complex(0.6, 0.05)};
  for (std::size_t i = 0; i < inside.size(); i++)
  {
    roots.push_back({inside[i], Complex(2.5 + i, 0.3)});
  }
  roots.push_back({Complex(-2.0, 1.0), Complex(3.0, -2.0)});
  roots.push_back({Complex(1.5, 1.5), Complex(-3.0, 0.0)});
  const auto T = rational_diagonal(roots);
  const auto contour = Contour::ellipse(0.0, 1.0, 1.0);
  for (int i = 0; i < 7; i++)
  {
    CHECK(std::abs(T.evaluate(roots[i].first)(i, i)) < 1e-12);
  }
  const auto M = reduced_moments(T, contour, 256, 2);
  const auto [H, Hs] = hankel_pencil(M);
  const auto svd = linalg::svd(H);
  const auto report = count_eigenvalues(M, svd.singular_values, 1e3);
  CHECK(std::abs(report.winding - 5.0) < 1e-8);
  CHECK(report.winding_count == 5);
  REQUIRE(report.gap_index.has_value());
  CHECK(*report.gap_index == 5);
  CHECK(report.gap_ratio >= 1e3);
  CHECK(report.chosen == 5);
  CHECK(report.strategy == CountStrategy::Agreement);
  CHECK(linalg::numerical_rank(svd.singular_values, 1e-12) == 5);

  const auto again = count_eigenvalues(T, contour, 256, svd, 1e3);
  CHECK(again.chosen == 5);
  CHECK(std::abs(again.winding - report.winding) < 1e-12);

  const auto solved = solve_reduced(T, contour, 256, 2, 1e3);
  const auto expected = sorted(inside);
  REQUIRE(solved.values.size() == 5);
  for (std::size_t i = 0; i < 5; i++)
  {
    CHECK(std::abs(solved.values[i] - expected[i]) < 1e-10);
    CHECK(solved.residuals[i] < 1e-10);
  }
}

TEST_CASE("count resolution strategies")
{
  MomentSet M;
  M.winding = 1.5;
  M.K = 1;
  RealVector flat(2);
  flat << 1.0, 0.9;
  CHECK_THROWS_AS(count_eigenvalues(M, flat, 1e3), NonIntegerWinding);
  RealVector gap(2);
  gap << 1.0, 1e-9;
  const auto r = count_eigenvalues(M, gap, 1e3);
  CHECK(r.strategy == CountStrategy::Gap);
  CHECK(r.chosen == 1);
  M.winding = 2.0;
  const auto w = count_eigenvalues(M, flat, 1e3);
  CHECK(w.strategy == CountStrategy::Winding);
  CHECK(w.chosen == 2);
  M.winding = 2.0;
  const auto d = count_eigenvalues(M, gap, 1e3);
  CHECK(d.strategy == CountStrategy::Residual);
  CHECK(d.candidates.size() == 2);
}

TEST_CASE("scalar and decoupled extraction")
{
  const auto contour = Contour::ellipse(0.0, 1.0, 1.0);
  const auto s = solve_reduced(linear_diagonal({Complex(0.3, -0.2)}), contour, 64, 1, 1e3);
  REQUIRE(s.values.size() == 1);
  CHECK(std::abs(s.values[0] - Complex(0.3, -0.2)) < 1e-10);

  const auto d =
      solve_reduced(linear_diagonal({Complex(-0.3, 0.1), Complex(0.4, 0.2)}), contour, 64, 2, 1e3);
  REQUIRE(d.values.size() == 2);
  CHECK(std::abs(d.values[0] - Complex(-0.3, 0.1)) < 1e-10);
  CHECK(std::abs(d.values[1] - Complex(0.4, 0.2)) < 1e-10);
  CHECK(std::abs(std::abs(d.vectors(0, 0)) - 1.0) < 1e-10);
  CHECK(std::abs(std::abs(d.vectors(1, 1)) - 1.0) < 1e-10);
  CHECK(std::abs(d.vectors(1, 0)) < 1e-10);

  const auto none = solve_reduced(linear_diagonal({Complex(3.0, 0.0)}), contour, 64, 1, 1e3);
  CHECK(none.values.empty());
}

TEST_CASE("linear pencil with twelve interior eigenvalues")
{
  const auto oracle = problems::make_linear_oracle(50, 12, 7);
  const Index n = 50;
  const ReducedNep T(ReducedNep::SumForm{{oracle.A, -ComplexMatrix::Identity(n, n)},
                                         {ScalarFunction::constant(), ScalarFunction::power(1)}});
  const auto s = solve_reduced(T, Contour::ellipse(0.0, 1.0, 1.0), 128, 2, 1e3);
  REQUIRE(s.values.size() == 12);
  const auto expected = sorted(std::vector<Complex>(oracle.interior.begin(), oracle.interior.end()));
  double err = 0.0;
  for (std::size_t i = 0; i < 12; i++)
  {
    err = std::max(err, std::abs(s.values[i] - expected[i]));
  }
  CHECK(err <= 1e-9);
}

TEST_CASE("scale and shift covariance")
{
  const std::vector<Complex> lambdas{Complex(1.2, 0.3), Complex(0.7, -0.2), Complex(1.5, 0.0)};
  const auto T = linear_diagonal(lambdas);
  const auto contour = Contour::ellipse(1.0, 1.0, 0.6);
  const auto M = reduced_moments(T, contour, 256, 2);
  auto extract = [&](const MomentSet &set)
  {
    const auto [H, Hs] = hankel_pencil(set);
    const auto svd = linalg::svd(H);
    return sorted(extract_eigenpairs(set, svd, Hs, 3, contour).values);
  };
  const auto base = extract(M);
  REQUIRE(base.size() == 3);

  // The same moments expressed with scale 1.7 instead of 1.
  MomentSet rescaled = M;
  rescaled.scale = 1.7;
  for (std::size_t a = 0; a < M.A.size(); a++)
  {
    rescaled.A[a] = M.A[a] * std::pow(M.scale / 1.7, static_cast<double>(a));
  }
  const auto other = extract(rescaled);
  REQUIRE(other.size() == 3);
  for (int i = 0; i < 3; i++)
  {
    CHECK(std::abs(other[i] - base[i]) <= 1e-10 * std::abs(base[i]));
  }

  std::vector<Complex> moved;
  const Complex c(-4.0, 2.0);
  for (Complex l : lambdas)
  {
    moved.push_back(l + c);
  }
  const auto shifted =
      solve_reduced(linear_diagonal(moved), Contour::ellipse(1.0 + c, 1.0, 0.6), 256, 2, 1e3);
  REQUIRE(shifted.values.size() == 3);
  for (int i = 0; i < 3; i++)
  {
    CHECK(std::abs(shifted.values[i] - c - base[i]) <= 1e-10 * std::abs(base[i]));
  }
}

TEST_CASE("exterior Ritz values are discarded")
{
  const auto T = linear_diagonal({Complex(0.2, 0.0), Complex(1.3, 0.0)});
  const auto contour = Contour::ellipse(0.0, 1.0, 1.0);
  const auto M = reduced_moments(T, contour, 16, 2);
  const auto [H, Hs] = hankel_pencil(M);
  const auto svd = linalg::svd(H);
  // Forcing count 2 pulls in the exterior eigenvalue, whose residue leaks through the
  // coarse quadrature.
  const auto r = extract_eigenpairs(M, svd, Hs, 2, contour);
  CHECK(r.values.size() + r.discarded.size() == 2);
  for (Complex l : r.values)
  {
    CHECK(contour.contains(l));
  }
  CHECK_THROWS_AS(extract_eigenpairs(M, svd, Hs, 5, contour), InvalidParameter);
  const auto empty = extract_eigenpairs(M, svd, Hs, 0, contour);
  CHECK(empty.values.empty());
}

TEST_CASE("Chebyshev form matches the sum form")
{
  const auto T = linear_diagonal({Complex(0.2, 0.1), Complex(-0.3, 0.0)});
  const auto poly = interpolate_matrix([&](Complex z) { return T.evaluate(z); }, 3, -1.0, 1.0);
  const ReducedNep C(poly);
  CHECK(C.is_chebyshev());
  CHECK(C.dimension() == 2);
  const Complex z(0.4, 0.7);
  CHECK(test::rel_diff(C.evaluate(z), T.evaluate(z)) < 1e-13);
  CHECK(test::rel_diff(C.derivative(z), T.derivative(z)) < 1e-13);
  const auto s = solve_reduced(C, Contour::ellipse(0.0, 1.0, 1.0), 64, 2, 1e3);
  REQUIRE(s.values.size() == 2);
  CHECK(std::abs(s.values[0] - Complex(-0.3, 0.0)) < 1e-10);
}

TEST_CASE("projection of a sum-form problem")
{
  const auto P = problems::make_acoustic_1d(20, 1.0);
  const ComplexMatrix S = linalg::orthonormalize(test::random_matrix(20, 5, 3));
  const auto R = ReducedNep::project(P, S);
  const Complex z(3.0, 0.5);
  CHECK(test::rel_diff(R.evaluate(z), S.adjoint() * P.assemble(z) * S) < 1e-13);
  CHECK(test::rel_diff(R.derivative(z), S.adjoint() * P.derivative_assemble(z) * S) < 1e-13);
  CHECK_THROWS_AS(ReducedNep::project(P, test::random_matrix(10, 2, 1)), DimensionMismatch);
  CHECK_THROWS_AS(ReducedNep(ReducedNep::SumForm{{ComplexMatrix::Identity(2, 2)}, {}}),
                  InvalidParameter);
}
