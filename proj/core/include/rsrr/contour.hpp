// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "rsrr/types.hpp"

namespace rsrr
{

// Nodes and weights of a closed-contour rule. Weights include the 1/(2 pi i) factor, so
// sum_j w_j f(z_j) approximates (1/(2 pi i)) * contour integral of f.
struct QuadratureSet
{
  std::vector<Complex> nodes;
  std::vector<Complex> weights;
  std::vector<Complex> tangents;  // unit, counterclockwise

  std::size_t size() const { return nodes.size(); }
};

/// Gauss-Legendre nodes (ascending) and weights on [-1, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

/// Midpoint trapezoid rule on phi(theta) = center + a cos(theta) + i b sin(theta) with
/// theta_j = 2 pi (j + 1/2) / N and weights phi'(theta_j) / (i N).
QuadratureSet ellipse_trapezoid(Complex center, double a, double b, Index N);

/// Gauss-Legendre on each side of an axis-aligned rectangle, counterclockwise from the
/// lower-left vertex. The two longer sides get n_long points, the shorter two n_short
/// (horizontal sides count as long for a square).
QuadratureSet rectangle_gauss(Complex lower_left, Complex upper_right, int n_long, int n_short);

/// ((z - shift) / scale)^alpha.
Complex scaled_basis_value(Complex z, Complex shift, double scale, int alpha);

struct EllipseShape
{
  Complex center;
  double a = 1.0;
  double b = 1.0;
};

struct RectangleShape
{
  Complex lower_left;
  Complex upper_right;
  int n_long = 10;
  int n_short = 5;
};

class Contour
{
public:
  static Contour ellipse(Complex center, double a, double b);
  static Contour rectangle(Complex lower_left, Complex upper_right, int n_long, int n_short);

  const std::variant<EllipseShape, RectangleShape> &shape() const { return shape_; }
  bool is_ellipse() const { return std::holds_alternative<EllipseShape>(shape_); }

  /// Shift gamma: the ellipse centre or rectangle midpoint.
  Complex shift() const;
  /// Scale rho: max(a, b) for an ellipse, the larger half-side for a rectangle.
  double scale() const;

  /// Strictly inside, keeping a boundary margin of margin * rho.
  bool contains(Complex z, double margin = 1e-10) const;

  /// Sampling nodes. For an ellipse, N trapezoid points; for a rectangle the per-side
  /// layout decides the count and N must either be 0 or equal 2 (n_long + n_short).
  QuadratureSet sampling_rule(Index N) const;

  /// Quadrature with about N_S nodes for contour moments. Rectangles keep the ratio of the
  /// sampling layout, at least one point per side.
  QuadratureSet moment_rule(Index N_S) const;

  /// Real-axis extent [Re gamma - a, Re gamma + a] (ellipse) or [x_lo, x_hi] (rectangle).
  std::pair<double, double> real_interval() const;

  /// Node count of sampling_rule(0) for rectangles; 0 (caller decides) for ellipses.
  Index natural_size() const;

private:
  explicit Contour(std::variant<EllipseShape, RectangleShape> shape) : shape_(shape) {}

  std::variant<EllipseShape, RectangleShape> shape_;
};

}  // namespace rsrr
