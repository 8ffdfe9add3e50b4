// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rsrr/contour.hpp"
#include "rsrr/errors.hpp"
#include "support/helpers.hpp"

using namespace rsrr;
using std::numbers::pi;

namespace
{

// sum_j w_j / (z_j - lambda): 1 inside, 0 outside.
Complex cauchy(const QuadratureSet &q, Complex lambda)
{
  Complex s = 0.0;
  for (std::size_t j = 0; j < q.size(); j++)
  {
    s += q.weights[j] / (q.nodes[j] - lambda);
  }
  return s;
}

}  // namespace

TEST_CASE("Gauss-Legendre integrates polynomials exactly")
{
  const auto [x, w] = gauss_legendre(6);
  for (int k = 0; k <= 11; k++)
  {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); i++)
    {
      s += w[i] * std::pow(x[i], k);
    }
    const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
    CHECK(std::abs(s - exact) < 1e-14);
  }
}

TEST_CASE("unit circle midpoint nodes")
{
  const auto q = ellipse_trapezoid(0.0, 1.0, 1.0, 4);
  REQUIRE(q.size() == 4);
  for (int j = 0; j < 4; j++)
  {
    CHECK(std::abs(q.nodes[j] - std::polar(1.0, pi * (2 * j + 1) / 4.0)) < 1e-15);
  }
}

TEST_CASE("ellipse Cauchy sums")
{
  const Complex gamma(9.9, 0.8);
  const double a = 10.1, b = 1.01;
  // A flat ellipse needs many nodes before the centre is resolved.
  CHECK(std::abs(cauchy(ellipse_trapezoid(gamma, a, b, 32), gamma) - 1.0) > 1e-2);
  CHECK(std::abs(cauchy(ellipse_trapezoid(gamma, a, b, 512), gamma) - 1.0) < 1e-13);
  const auto q64 = ellipse_trapezoid(gamma, a, b, 64);
  CHECK(std::abs(cauchy(q64, gamma + 2.0 * a)) < 1e-10);
  CHECK(std::abs(cauchy(q64, gamma - Complex(0.0, 2.0 * a))) < 1e-10);
}

TEST_CASE("trapezoid convergence is exponential")
{
  const Complex lambda(0.3, 0.2);
  double prev = -1.0;
  for (Index N : {8, 16, 32, 64})
  {
    const double err = std::abs(cauchy(ellipse_trapezoid(0.0, 1.0, 0.8, N), lambda) - 1.0);
    if (prev >= 0.0)
    {
      CHECK(err <= prev * prev + 1e-14);
    }
    prev = err;
  }
}

TEST_CASE("ellipse nodes lie on the curve and orientation is counterclockwise")
{
  const Complex gamma(1.0, -2.0);
  const auto q = ellipse_trapezoid(gamma, 3.0, 0.5, 50);
  for (const Complex &z : q.nodes)
  {
    const double u = (z.real() - gamma.real()) / 3.0, v = (z.imag() - gamma.imag()) / 0.5;
    CHECK(std::abs(u * u + v * v - 1.0) < 1e-12);
  }
  CHECK(cauchy(q, gamma).real() > 0.5);
  CHECK_THROWS_AS(ellipse_trapezoid(0.0, -1.0, 1.0, 8), InvalidParameter);
  CHECK_THROWS_AS(ellipse_trapezoid(0.0, 1.0, 1.0, 1), InvalidParameter);
}

TEST_CASE("rectangle rule")
{
  const auto q = rectangle_gauss(0.0, Complex(1.0, 1.0), 12, 12);
  CHECK(q.size() == 48);
  CHECK(std::abs(cauchy(q, Complex(0.5, 0.5)) - 1.0) < 1e-8);
  CHECK(std::abs(cauchy(q, Complex(3.0, 0.5))) < 1e-8);
  CHECK(rectangle_gauss(140.0, Complex(335.4, 50.0), 10, 5).size() == 30);
  CHECK(rectangle_gauss(140.0, Complex(335.4, 50.0), 12, 6).size() == 36);
  CHECK_THROWS_AS(rectangle_gauss(0.0, Complex(-1.0, 1.0), 4, 4), InvalidParameter);
  CHECK_THROWS_AS(rectangle_gauss(0.0, Complex(1.0, 1.0), 0, 4), InvalidParameter);
}

TEST_CASE("scaled basis values")
{
  const Complex gamma(1.0, 2.0);
  CHECK(scaled_basis_value(Complex(7.0, -3.0), gamma, 2.5, 0) == Complex(1.0));
  CHECK(std::abs(scaled_basis_value(gamma + 2.5, gamma, 2.5, 5) - 1.0) < 1e-15);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; t++)
  {
    const Complex z = test::random_point(rng, 4.0);
    const int alpha = t % 9;
    const double bound = std::pow(std::abs(z - gamma) / 2.5, alpha);
    CHECK(std::abs(scaled_basis_value(z, gamma, 2.5, alpha)) <= bound * (1.0 + 1e-13));
  }
}

TEST_CASE("contour objects")
{
  const auto e = Contour::ellipse(Complex(9.9, 0.8), 10.1, 1.01);
  CHECK(e.scale() == 10.1);
  CHECK(e.shift() == Complex(9.9, 0.8));
  CHECK(e.contains(Complex(9.9, 0.8)));
  CHECK(!e.contains(Complex(9.9, 2.0)));
  CHECK(e.sampling_rule(100).size() == 100);
  const auto [lo, hi] = e.real_interval();
  CHECK(lo == doctest::Approx(-0.2));
  CHECK(hi == doctest::Approx(20.0));

  const auto r = Contour::rectangle(140.0, Complex(335.4, 50.0), 12, 6);
  CHECK(r.shift() == Complex(237.7, 25.0));
  CHECK(r.scale() == doctest::Approx(97.7));
  CHECK(r.natural_size() == 36);
  CHECK(r.sampling_rule(0).size() == 36);
  CHECK_THROWS_AS(r.sampling_rule(30), InvalidParameter);
  CHECK(r.contains(Complex(200.0, 10.0)));
  CHECK(!r.contains(Complex(200.0, -1.0)));
  const auto m = r.moment_rule(1080);
  CHECK(m.size() >= 1000);
  CHECK(std::abs(cauchy(m, Complex(300.0, 40.0)) - 1.0) < 1e-10);
}
