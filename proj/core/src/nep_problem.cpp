// SPDX-License-Identifier: Apache-2.0

#include "rsrr/nep_problem.hpp"

#include <Eigen/SparseLU>

#include "rsrr/errors.hpp"
#include "rsrr/linalg.hpp"

namespace rsrr
{

namespace
{

constexpr Index DENSE_SOLVE_LIMIT = 400;

bool is_banded_tridiagonal(const SparseMatrix &A)
{
  for (Index k = 0; k < A.outerSize(); k++)
  {
    for (SparseMatrix::InnerIterator it(A, k); it; ++it)
    {
      if (std::abs(it.row() - it.col()) > 1 && it.value() != 0.0)
      {
        return false;
      }
    }
  }
  return true;
}

Tridiagonal extract_band(const SparseMatrix &A)
{
  const Index n = A.rows();
  Tridiagonal t{ComplexVector::Zero(std::max<Index>(n - 1, 0)), ComplexVector::Zero(n),
                ComplexVector::Zero(std::max<Index>(n - 1, 0))};
  for (Index k = 0; k < A.outerSize(); k++)
  {
    for (SparseMatrix::InnerIterator it(A, k); it; ++it)
    {
      const Index i = it.row(), j = it.col();
      if (i == j)
      {
        t.diag(i) += it.value();
      }
      else if (i == j + 1)
      {
        t.lower(j) += it.value();
      }
      else if (j == i + 1)
      {
        t.upper(i) += it.value();
      }
    }
  }
  return t;
}

}  // namespace

ComplexMatrix NepProblem::derivative_assemble(Complex) const
{
  throw InvalidParameter(name() + ": derivative of T(z) is not available");
}

ComplexMatrix NepProblem::apply(Complex z, const ComplexMatrix &X) const
{
  return assemble(z) * X;
}

ComplexMatrix NepProblem::solve(Complex z, const ComplexMatrix &B) const
{
  return linalg::solve_dense(assemble(z), B);
}

SumFormNep::SumFormNep(std::vector<Term> terms, std::string name, SolveStrategy strategy)
  : terms_(std::move(terms)), name_(std::move(name)), strategy_(strategy)
{
  if (terms_.empty())
  {
    throw InvalidParameter("SumFormNep: at least one term is required");
  }
  n_ = terms_.front().matrix.rows();
  for (auto &t : terms_)
  {
    if (t.matrix.rows() != n_ || t.matrix.cols() != n_)
    {
      throw DimensionMismatch("SumFormNep: term '" + t.label + "' is " +
                              std::to_string(t.matrix.rows()) + "x" +
                              std::to_string(t.matrix.cols()) + ", expected " +
                              std::to_string(n_) + "x" + std::to_string(n_));
    }
    t.matrix.makeCompressed();
  }
  if (n_ < 1)
  {
    throw InvalidParameter("SumFormNep: empty matrices");
  }
  tridiagonal_ = true;
  for (const auto &t : terms_)
  {
    tridiagonal_ = tridiagonal_ && is_banded_tridiagonal(t.matrix);
  }
  if (tridiagonal_)
  {
    for (const auto &t : terms_)
    {
      term_bands_.push_back(extract_band(t.matrix));
    }
  }
  if (strategy_ == SolveStrategy::Auto)
  {
    strategy_ = tridiagonal_ ? SolveStrategy::Tridiagonal
                : n_ <= DENSE_SOLVE_LIMIT ? SolveStrategy::Dense
                                          : SolveStrategy::Sparse;
  }
  if (strategy_ == SolveStrategy::Tridiagonal && !tridiagonal_)
  {
    throw InvalidParameter("SumFormNep: tridiagonal solve requested for a non-tridiagonal problem");
  }
}

SumFormNep SumFormNep::with_strategy(SolveStrategy strategy) const
{
  return SumFormNep(terms_, name_, strategy);
}

SparseMatrix SumFormNep::assemble_sparse(Complex z) const
{
  SparseMatrix T(n_, n_);
  for (const auto &t : terms_)
  {
    T += t.f.value(z) * t.matrix;
  }
  return T;
}

SparseMatrix SumFormNep::derivative_sparse(Complex z) const
{
  SparseMatrix T(n_, n_);
  for (const auto &t : terms_)
  {
    T += t.f.derivative(z) * t.matrix;
  }
  return T;
}

Tridiagonal SumFormNep::assemble_tridiagonal(Complex z) const
{
  if (!tridiagonal_)
  {
    throw InvalidParameter("SumFormNep: problem is not tridiagonal");
  }
  Tridiagonal T{ComplexVector::Zero(n_ - 1), ComplexVector::Zero(n_), ComplexVector::Zero(n_ - 1)};
  for (std::size_t j = 0; j < terms_.size(); j++)
  {
    const Complex f = terms_[j].f.value(z);
    T.lower += f * term_bands_[j].lower;
    T.diag += f * term_bands_[j].diag;
    T.upper += f * term_bands_[j].upper;
  }
  return T;
}

ComplexMatrix SumFormNep::assemble(Complex z) const
{
  ComplexMatrix T = ComplexMatrix::Zero(n_, n_);
  for (const auto &t : terms_)
  {
    T += t.f.value(z) * ComplexMatrix(t.matrix);
  }
  return T;
}

ComplexMatrix SumFormNep::derivative_assemble(Complex z) const
{
  ComplexMatrix T = ComplexMatrix::Zero(n_, n_);
  for (const auto &t : terms_)
  {
    T += t.f.derivative(z) * ComplexMatrix(t.matrix);
  }
  return T;
}

ComplexMatrix SumFormNep::apply(Complex z, const ComplexMatrix &X) const
{
  if (X.rows() != n_)
  {
    throw DimensionMismatch("SumFormNep::apply: operand has wrong row count");
  }
  ComplexMatrix Y = ComplexMatrix::Zero(n_, X.cols());
  for (const auto &t : terms_)
  {
    Y += t.f.value(z) * (t.matrix * X);
  }
  return Y;
}

ComplexMatrix SumFormNep::solve(Complex z, const ComplexMatrix &B) const
{
  switch (strategy_)
  {
    case SolveStrategy::Tridiagonal:
      return TridiagonalLU(assemble_tridiagonal(z)).solve(B);
    case SolveStrategy::Sparse:
    {
      SparseMatrix T = assemble_sparse(z);
      T.makeCompressed();
      Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
      lu.compute(T);
      if (lu.info() != Eigen::Success)
      {
        throw SingularMatrix(name_ + ": sparse LU failed: " + lu.lastErrorMessage());
      }
      return lu.solve(B);
    }
    case SolveStrategy::Dense:
    case SolveStrategy::Auto:
      break;
  }
  return linalg::solve_dense(assemble(z), B);
}

BlackBoxNep::BlackBoxNep(Index n, Sampler assemble, Sampler derivative, std::string name)
  : n_(n), assemble_(std::move(assemble)), derivative_(std::move(derivative)), name_(std::move(name))
{
  if (n_ < 1 || !assemble_)
  {
    throw InvalidParameter("BlackBoxNep: dimension and sampler are required");
  }
}

ComplexMatrix BlackBoxNep::assemble(Complex z) const
{
  ComplexMatrix T = assemble_(z);
  if (T.rows() != n_ || T.cols() != n_)
  {
    throw DimensionMismatch(name_ + ": sampler returned a matrix of the wrong size");
  }
  return T;
}

ComplexMatrix BlackBoxNep::derivative_assemble(Complex z) const
{
  if (!derivative_)
  {
    return NepProblem::derivative_assemble(z);
  }
  return derivative_(z);
}

}  // namespace rsrr
