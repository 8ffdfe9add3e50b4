// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <variant>
#include <vector>

#include "rsrr/types.hpp"

namespace rsrr
{

// Closed vocabulary of scalar coefficient functions f_j(z) for sum-form problems. Every atom
// carries an exact derivative.
namespace atom
{

struct Constant
{
};

// z^k, k >= 0.
struct Power
{
  int k = 1;
};

// z / (z + b). The numerator scale a lives in the owning Term::coef.
struct Rational
{
  double b = 1.0;
};

// i * sqrt(z^2 - sigma^2), principal branch of the square root.
struct ShiftedSqrt
{
  double sigma = 0.0;
};

// tau_j(m(z)) with m the affine map of [lo, hi] onto [-1, 1].
struct ChebyshevBasis
{
  int j = 0;
  double lo = -1.0;
  double hi = 1.0;
};

}  // namespace atom

using AtomKind =
    std::variant<atom::Constant, atom::Power, atom::Rational, atom::ShiftedSqrt, atom::ChebyshevBasis>;

struct Atom
{
  Complex coef{1.0, 0.0};
  AtomKind kind;
};

// Linear combination of vocabulary atoms: f(z) = sum_k coef_k * atom_k(z).
class ScalarFunction
{
public:
  ScalarFunction() = default;
  ScalarFunction(std::vector<Atom> atoms);

  static ScalarFunction constant(Complex c = 1.0);
  static ScalarFunction power(int k, Complex c = 1.0);
  static ScalarFunction rational(double a, double b);
  static ScalarFunction shifted_sqrt(double sigma, Complex c = 1.0);
  static ScalarFunction chebyshev(int j, double lo, double hi, Complex c = 1.0);

  ScalarFunction &operator+=(const ScalarFunction &other);

  /// Throws PoleEvaluation within 1e-12 of a rational pole.
  Complex value(Complex z) const;
  /// Throws PoleEvaluation at rational poles and square-root branch points.
  Complex derivative(Complex z) const;

  const std::vector<Atom> &atoms() const { return atoms_; }

  std::string describe() const;

private:
  std::vector<Atom> atoms_;
};

// tau_j(x) and tau_j'(x) for complex x by the three-term recurrence.
Complex chebyshev_t(int j, Complex x);
Complex chebyshev_t_derivative(int j, Complex x);

}  // namespace rsrr
