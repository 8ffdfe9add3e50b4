// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace rsrr
{

// Base of every error the library raises.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error
{
public:
  using Error::Error;
};

class DimensionMismatch : public Error
{
public:
  using Error::Error;
};

// A pivot vanished during factorisation. When raised from a resolvent sweep the offending
// quadrature node is attached so the caller can perturb it.
class SingularMatrix : public Error
{
public:
  explicit SingularMatrix(const std::string &what, std::optional<std::size_t> node = {})
    : Error(what), node_(node)
  {
  }

  std::optional<std::size_t> node() const { return node_; }

private:
  std::optional<std::size_t> node_;
};

class ConvergenceFailure : public Error
{
public:
  using Error::Error;
};

// Evaluation at a pole (or branch point) of a scalar coefficient function.
class PoleEvaluation : public Error
{
public:
  using Error::Error;
};

class ParseError : public Error
{
public:
  ParseError(const std::string &what, std::size_t line)
    : Error("line " + std::to_string(line) + ": " + what), line_(line)
  {
  }

  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

class UnsupportedField : public Error
{
public:
  using Error::Error;
};

class EmptyBasis : public Error
{
public:
  using Error::Error;
};

class NonIntegerWinding : public Error
{
public:
  NonIntegerWinding(const std::string &what, double winding) : Error(what), winding_(winding)
  {
  }

  double winding() const { return winding_; }

private:
  double winding_;
};

class RankCollapse : public Error
{
public:
  using Error::Error;
};

}  // namespace rsrr
