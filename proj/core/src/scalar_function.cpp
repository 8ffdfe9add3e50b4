// SPDX-License-Identifier: Apache-2.0

#include "rsrr/scalar_function.hpp"

#include <cmath>
#include <sstream>

#include "rsrr/errors.hpp"

namespace rsrr
{

namespace
{

constexpr double POLE_TOL = 1e-12;

template <class... Ts>
struct Overloaded : Ts...
{
  using Ts::operator()...;
};

Complex ipow(Complex z, int k)
{
  Complex r = 1.0;
  Complex base = z;
  while (k > 0)
  {
    if (k & 1)
    {
      r *= base;
    }
    base *= base;
    k >>= 1;
  }
  return r;
}

void check_pole(Complex z, double b)
{
  if (std::abs(z + b) < POLE_TOL)
  {
    std::ostringstream msg;
    msg << "rational term z/(z+" << b << ") evaluated at its pole, z = " << z;
    throw PoleEvaluation(msg.str());
  }
}

}  // namespace

Complex chebyshev_t(int j, Complex x)
{
  if (j == 0)
  {
    return 1.0;
  }
  Complex t0 = 1.0, t1 = x;
  for (int k = 1; k < j; k++)
  {
    const Complex t2 = 2.0 * x * t1 - t0;
    t0 = t1;
    t1 = t2;
  }
  return t1;
}

Complex chebyshev_t_derivative(int j, Complex x)
{
  // tau_j' = j U_{j-1}.
  if (j == 0)
  {
    return 0.0;
  }
  Complex u0 = 1.0, u1 = 2.0 * x;
  if (j == 1)
  {
    return 1.0;
  }
  for (int k = 2; k < j; k++)
  {
    const Complex u2 = 2.0 * x * u1 - u0;
    u0 = u1;
    u1 = u2;
  }
  return static_cast<double>(j) * u1;
}

ScalarFunction::ScalarFunction(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {}

ScalarFunction ScalarFunction::constant(Complex c)
{
  return ScalarFunction({Atom{c, atom::Constant{}}});
}

ScalarFunction ScalarFunction::power(int k, Complex c)
{
  if (k < 0)
  {
    throw InvalidParameter("power atom requires k >= 0");
  }
  return ScalarFunction({Atom{c, atom::Power{k}}});
}

ScalarFunction ScalarFunction::rational(double a, double b)
{
  return ScalarFunction({Atom{a, atom::Rational{b}}});
}

ScalarFunction ScalarFunction::shifted_sqrt(double sigma, Complex c)
{
  return ScalarFunction({Atom{c, atom::ShiftedSqrt{sigma}}});
}

ScalarFunction ScalarFunction::chebyshev(int j, double lo, double hi, Complex c)
{
  if (j < 0 || !(lo < hi))
  {
    throw InvalidParameter("chebyshev atom requires j >= 0 and lo < hi");
  }
  return ScalarFunction({Atom{c, atom::ChebyshevBasis{j, lo, hi}}});
}

ScalarFunction &ScalarFunction::operator+=(const ScalarFunction &other)
{
  atoms_.insert(atoms_.end(), other.atoms_.begin(), other.atoms_.end());
  return *this;
}

Complex ScalarFunction::value(Complex z) const
{
  Complex sum = 0.0;
  for (const auto &a : atoms_)
  {
    const Complex v = std::visit(
        Overloaded{[](const atom::Constant &) { return Complex(1.0); },
                   [&](const atom::Power &p) { return ipow(z, p.k); },
                   [&](const atom::Rational &r)
                   {
                     check_pole(z, r.b);
                     return z / (z + r.b);
                   },
                   [&](const atom::ShiftedSqrt &s)
                   { return 1.0i * std::sqrt(z * z - s.sigma * s.sigma); },
                   [&](const atom::ChebyshevBasis &c)
                   {
                     const Complex x = (2.0 * z - (c.lo + c.hi)) / (c.hi - c.lo);
                     return chebyshev_t(c.j, x);
                   }},
        a.kind);
    sum += a.coef * v;
  }
  return sum;
}

Complex ScalarFunction::derivative(Complex z) const
{
  Complex sum = 0.0;
  for (const auto &a : atoms_)
  {
    const Complex v = std::visit(
        Overloaded{[](const atom::Constant &) { return Complex(0.0); },
                   [&](const atom::Power &p)
                   { return p.k == 0 ? Complex(0.0) : static_cast<double>(p.k) * ipow(z, p.k - 1); },
                   [&](const atom::Rational &r)
                   {
                     check_pole(z, r.b);
                     const Complex d = z + r.b;
                     return r.b / (d * d);
                   },
                   [&](const atom::ShiftedSqrt &s)
                   {
                     const Complex root = std::sqrt(z * z - s.sigma * s.sigma);
                     if (root == 0.0)
                     {
                       throw PoleEvaluation("square-root term differentiated at its branch point");
                     }
                     return 1.0i * z / root;
                   },
                   [&](const atom::ChebyshevBasis &c)
                   {
                     const double scale = 2.0 / (c.hi - c.lo);
                     const Complex x = (2.0 * z - (c.lo + c.hi)) / (c.hi - c.lo);
                     return scale * chebyshev_t_derivative(c.j, x);
                   }},
        a.kind);
    sum += a.coef * v;
  }
  return sum;
}

std::string ScalarFunction::describe() const
{
  std::ostringstream os;
  bool first = true;
  for (const auto &a : atoms_)
  {
    if (!first)
    {
      os << " + ";
    }
    first = false;
    os << a.coef << "*";
    std::visit(Overloaded{[&](const atom::Constant &) { os << "1"; },
                          [&](const atom::Power &p) { os << "z^" << p.k; },
                          [&](const atom::Rational &r) { os << "z/(z+" << r.b << ")"; },
                          [&](const atom::ShiftedSqrt &s)
                          { os << "i*sqrt(z^2-" << s.sigma << "^2)"; },
                          [&](const atom::ChebyshevBasis &c)
                          { os << "T" << c.j << "[" << c.lo << "," << c.hi << "]"; }},
               a.kind);
  }
  return os.str();
}

}  // namespace rsrr
