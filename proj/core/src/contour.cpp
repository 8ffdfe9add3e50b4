// SPDX-License-Identifier: Apache-2.0

#include "rsrr/contour.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rsrr/errors.hpp"

namespace rsrr
{

namespace
{

constexpr double PI = std::numbers::pi;
const Complex TWO_PI_I = 2.0 * PI * 1.0i;

void append_side(QuadratureSet &q, Complex from, Complex to, int n)
{
  const auto [t, g] = gauss_legendre(n);
  const Complex half = 0.5 * (to - from);
  const Complex mid = 0.5 * (to + from);
  const Complex dir = half / std::abs(half);
  for (int k = 0; k < n; k++)
  {
    q.nodes.push_back(mid + t[k] * half);
    q.weights.push_back(g[k] * half / TWO_PI_I);
    q.tangents.push_back(dir);
  }
}

}  // namespace

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n)
{
  if (n < 1)
  {
    throw InvalidParameter("gauss_legendre: n must be >= 1");
  }
  std::vector<double> x(n), w(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; i++)
  {
    // Newton on P_n from the Chebyshev-like initial guess.
    double z = std::cos(PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; it++)
    {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; j++)
      {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-16)
      {
        break;
      }
    }
    // Recompute the derivative at the converged root.
    double p1 = 1.0, p2 = 0.0;
    for (int j = 1; j <= n; j++)
    {
      const double p3 = p2;
      p2 = p1;
      p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
    }
    pp = n * (z * p1 - p2) / (z * z - 1.0);
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
  if (n % 2 == 1)
  {
    x[n / 2] = 0.0;
  }
  return {x, w};
}

QuadratureSet ellipse_trapezoid(Complex center, double a, double b, Index N)
{
  if (!(a > 0.0) || !(b > 0.0))
  {
    throw InvalidParameter("ellipse_trapezoid: semi-axes must be positive");
  }
  if (N < 2)
  {
    throw InvalidParameter("ellipse_trapezoid: N must be >= 2");
  }
  QuadratureSet q;
  q.nodes.reserve(static_cast<std::size_t>(N));
  q.weights.reserve(static_cast<std::size_t>(N));
  q.tangents.reserve(static_cast<std::size_t>(N));
  const double dN = static_cast<double>(N);
  for (Index j = 0; j < N; j++)
  {
    const double theta = 2.0 * PI * (static_cast<double>(j) + 0.5) / dN;
    const double c = std::cos(theta), s = std::sin(theta);
    const Complex dphi(-a * s, b * c);
    q.nodes.push_back(center + Complex(a * c, b * s));
    q.weights.push_back(dphi / (1.0i * dN));
    q.tangents.push_back(dphi / std::abs(dphi));
  }
  return q;
}

QuadratureSet rectangle_gauss(Complex lower_left, Complex upper_right, int n_long, int n_short)
{
  const double width = upper_right.real() - lower_left.real();
  const double height = upper_right.imag() - lower_left.imag();
  if (!(width > 0.0) || !(height > 0.0))
  {
    throw InvalidParameter("rectangle_gauss: width and height must be positive");
  }
  if (n_long < 1 || n_short < 1)
  {
    throw InvalidParameter("rectangle_gauss: per-side counts must be >= 1");
  }
  const int n_horizontal = width >= height ? n_long : n_short;
  const int n_vertical = width >= height ? n_short : n_long;
  const Complex lower_right(upper_right.real(), lower_left.imag());
  const Complex upper_left(lower_left.real(), upper_right.imag());
  QuadratureSet q;
  append_side(q, lower_left, lower_right, n_horizontal);
  append_side(q, lower_right, upper_right, n_vertical);
  append_side(q, upper_right, upper_left, n_horizontal);
  append_side(q, upper_left, lower_left, n_vertical);
  return q;
}

Complex scaled_basis_value(Complex z, Complex shift, double scale, int alpha)
{
  if (!(scale > 0.0) || alpha < 0)
  {
    throw InvalidParameter("scaled_basis_value: need scale > 0 and alpha >= 0");
  }
  const Complex x = (z - shift) / scale;
  Complex r = 1.0;
  for (int k = 0; k < alpha; k++)
  {
    r *= x;
  }
  return r;
}

Contour Contour::ellipse(Complex center, double a, double b)
{
  if (!(a > 0.0) || !(b > 0.0))
  {
    throw InvalidParameter("ellipse: semi-axes must be positive");
  }
  return Contour(EllipseShape{center, a, b});
}

Contour Contour::rectangle(Complex lower_left, Complex upper_right, int n_long, int n_short)
{
  if (!(upper_right.real() > lower_left.real()) || !(upper_right.imag() > lower_left.imag()))
  {
    throw InvalidParameter("rectangle: upper-right vertex must lie above and right of lower-left");
  }
  if (n_long < 1 || n_short < 1)
  {
    throw InvalidParameter("rectangle: per-side counts must be >= 1");
  }
  return Contour(RectangleShape{lower_left, upper_right, n_long, n_short});
}

Complex Contour::shift() const
{
  if (const auto *e = std::get_if<EllipseShape>(&shape_))
  {
    return e->center;
  }
  const auto &r = std::get<RectangleShape>(shape_);
  return 0.5 * (r.lower_left + r.upper_right);
}

double Contour::scale() const
{
  if (const auto *e = std::get_if<EllipseShape>(&shape_))
  {
    return std::max(e->a, e->b);
  }
  const auto &r = std::get<RectangleShape>(shape_);
  const Complex d = r.upper_right - r.lower_left;
  return 0.5 * std::max(d.real(), d.imag());
}

bool Contour::contains(Complex z, double margin) const
{
  if (const auto *e = std::get_if<EllipseShape>(&shape_))
  {
    // Normalised radius; a margin of m * rho shrinks it by at most m * rho / min(a, b).
    const double x = (z.real() - e->center.real()) / e->a;
    const double y = (z.imag() - e->center.imag()) / e->b;
    const double shrink = margin * scale() / std::min(e->a, e->b);
    return std::sqrt(x * x + y * y) < 1.0 - shrink;
  }
  const auto &r = std::get<RectangleShape>(shape_);
  const double m = margin * scale();
  return z.real() > r.lower_left.real() + m && z.real() < r.upper_right.real() - m &&
         z.imag() > r.lower_left.imag() + m && z.imag() < r.upper_right.imag() - m;
}

QuadratureSet Contour::sampling_rule(Index N) const
{
  if (const auto *e = std::get_if<EllipseShape>(&shape_))
  {
    return ellipse_trapezoid(e->center, e->a, e->b, N);
  }
  const auto &r = std::get<RectangleShape>(shape_);
  if (N != 0 && N != natural_size())
  {
    throw InvalidParameter("rectangle layout has " + std::to_string(natural_size()) +
                           " sampling nodes but N = " + std::to_string(N));
  }
  return rectangle_gauss(r.lower_left, r.upper_right, r.n_long, r.n_short);
}

QuadratureSet Contour::moment_rule(Index N_S) const
{
  if (const auto *e = std::get_if<EllipseShape>(&shape_))
  {
    return ellipse_trapezoid(e->center, e->a, e->b, N_S);
  }
  const auto &r = std::get<RectangleShape>(shape_);
  const double per_unit = static_cast<double>(N_S) / static_cast<double>(natural_size());
  const int n_long = std::max(1, static_cast<int>(std::lround(per_unit * r.n_long)));
  const int n_short = std::max(1, static_cast<int>(std::lround(per_unit * r.n_short)));
  return rectangle_gauss(r.lower_left, r.upper_right, n_long, n_short);
}

std::pair<double, double> Contour::real_interval() const
{
  if (const auto *e = std::get_if<EllipseShape>(&shape_))
  {
    return {e->center.real() - e->a, e->center.real() + e->a};
  }
  const auto &r = std::get<RectangleShape>(shape_);
  return {r.lower_left.real(), r.upper_right.real()};
}

Index Contour::natural_size() const
{
  if (const auto *r = std::get_if<RectangleShape>(&shape_))
  {
    return 2 * (r->n_long + r->n_short);
  }
  return 0;
}

}  // namespace rsrr
