// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "rsrr/scalar_function.hpp"
#include "rsrr/tridiagonal.hpp"
#include "rsrr/types.hpp"

namespace rsrr
{

using SparseMatrix = Eigen::SparseMatrix<Complex>;

class SumFormNep;

// A nonlinear eigenvalue problem T(z) v = 0 of dimension n. Implementations are immutable
// after construction and every method may be called concurrently.
class NepProblem
{
public:
  virtual ~NepProblem() = default;

  virtual Index dimension() const = 0;

  /// Dense T(z).
  virtual ComplexMatrix assemble(Complex z) const = 0;

  /// Dense dT/dz. The default throws InvalidParameter; only needed for a winding count on
  /// the full problem.
  virtual ComplexMatrix derivative_assemble(Complex z) const;

  /// T(z) X. The default assembles; structured problems override.
  virtual ComplexMatrix apply(Complex z, const ComplexMatrix &X) const;

  /// X = T(z)^{-1} B. The default factors the dense assembly.
  virtual ComplexMatrix solve(Complex z, const ComplexMatrix &B) const;

  /// Non-null when the problem is explicitly T(z) = sum_j T_j f_j(z).
  virtual const SumFormNep *sum_form() const { return nullptr; }

  virtual std::string name() const { return "nep"; }
};

// T(z) = sum_j T_j f_j(z) with sparse coefficient matrices.
class SumFormNep : public NepProblem
{
public:
  struct Term
  {
    SparseMatrix matrix;
    ScalarFunction f;
    std::string label;
  };

  enum class SolveStrategy
  {
    Auto,         // tridiagonal if every term is, dense for n <= 400, sparse LU otherwise
    Dense,
    Sparse,
    Tridiagonal,
  };

  SumFormNep(std::vector<Term> terms, std::string name = "sum-form",
             SolveStrategy strategy = SolveStrategy::Auto);

  Index dimension() const override { return n_; }
  ComplexMatrix assemble(Complex z) const override;
  ComplexMatrix derivative_assemble(Complex z) const override;
  ComplexMatrix apply(Complex z, const ComplexMatrix &X) const override;
  ComplexMatrix solve(Complex z, const ComplexMatrix &B) const override;
  const SumFormNep *sum_form() const override { return this; }
  std::string name() const override { return name_; }

  SparseMatrix assemble_sparse(Complex z) const;
  SparseMatrix derivative_sparse(Complex z) const;

  /// Only valid when every term is tridiagonal.
  Tridiagonal assemble_tridiagonal(Complex z) const;

  const std::vector<Term> &terms() const { return terms_; }
  SolveStrategy strategy() const { return strategy_; }
  bool is_tridiagonal() const { return tridiagonal_; }

  /// Same problem with a different solve strategy (dense fallback for cross-checks).
  SumFormNep with_strategy(SolveStrategy strategy) const;

private:
  std::vector<Term> terms_;
  std::string name_;
  SolveStrategy strategy_;
  Index n_ = 0;
  bool tridiagonal_ = false;
  std::vector<Tridiagonal> term_bands_;
};

// Black-box T(z) given by a callback, the setting of Chebyshev-interpolated reductions.
class BlackBoxNep : public NepProblem
{
public:
  using Sampler = std::function<ComplexMatrix(Complex)>;

  BlackBoxNep(Index n, Sampler assemble, Sampler derivative = {}, std::string name = "black-box");

  Index dimension() const override { return n_; }
  ComplexMatrix assemble(Complex z) const override;
  ComplexMatrix derivative_assemble(Complex z) const override;
  std::string name() const override { return name_; }

private:
  Index n_;
  Sampler assemble_, derivative_;
  std::string name_;
};

}  // namespace rsrr
