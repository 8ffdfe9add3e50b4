// SPDX-License-Identifier: Apache-2.0

#include "rsrr/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rsrr/errors.hpp"
#include "rsrr/parallel.hpp"

namespace rsrr
{

namespace
{

void check_interval(Index d, double lo, double hi)
{
  if (d < 0 || !(lo < hi))
  {
    throw InvalidParameter("chebyshev: need d >= 0 and lo < hi");
  }
}

ChebyshevMatrixPoly transform(std::vector<ComplexMatrix> samples, Index d, double lo, double hi)
{
  const double dd = static_cast<double>(d + 1);
  ChebyshevMatrixPoly p{{}, lo, hi};
  p.coefficients.reserve(static_cast<std::size_t>(d + 1));
  for (Index j = 0; j <= d; j++)
  {
    ComplexMatrix P = ComplexMatrix::Zero(samples.front().rows(), samples.front().cols());
    for (Index k = 0; k <= d; k++)
    {
      const double theta = (static_cast<double>(k) + 0.5) * std::numbers::pi / dd;
      P += std::cos(static_cast<double>(j) * theta) * samples[static_cast<std::size_t>(k)];
    }
    P *= (j == 0 ? 1.0 : 2.0) / dd;
    p.coefficients.push_back(std::move(P));
  }
  return p;
}

std::vector<ComplexMatrix> sample_all(const std::function<ComplexMatrix(Complex)> &f,
                                      const std::vector<double> &nodes)
{
  std::vector<ComplexMatrix> samples(nodes.size());
  parallel_for(nodes.size(), [&](std::size_t k) { samples[k] = f(nodes[k]); });
  for (const auto &s : samples)
  {
    if (s.rows() != samples.front().rows() || s.cols() != samples.front().cols())
    {
      throw DimensionMismatch("chebyshev: sampler returned matrices of different sizes");
    }
  }
  return samples;
}

}  // namespace

ComplexMatrix ChebyshevMatrixPoly::evaluate(Complex z) const
{
  if (coefficients.empty())
  {
    throw InvalidParameter("chebyshev: empty coefficient list");
  }
  const Complex x = map(z);
  const Index n = coefficients.front().rows(), m = coefficients.front().cols();
  ComplexMatrix b1 = ComplexMatrix::Zero(n, m), b2 = ComplexMatrix::Zero(n, m);
  for (Index j = degree(); j >= 1; j--)
  {
    ComplexMatrix b0 = coefficients[static_cast<std::size_t>(j)] + 2.0 * x * b1 - b2;
    b2 = std::move(b1);
    b1 = std::move(b0);
  }
  return coefficients.front() + x * b1 - b2;
}

ChebyshevMatrixPoly ChebyshevMatrixPoly::derivative() const
{
  const Index d = degree();
  ChebyshevMatrixPoly out{{}, lo, hi};
  const Index n = dimension(), m = coefficients.empty() ? 0 : coefficients.front().cols();
  if (d < 1)
  {
    out.coefficients.assign(1, ComplexMatrix::Zero(n, m));
    return out;
  }
  // c'_{k-1} = c'_{k+1} + 2k c_k, then the k = 0 term is halved.
  std::vector<ComplexMatrix> c(static_cast<std::size_t>(d + 1), ComplexMatrix::Zero(n, m));
  for (Index k = d; k >= 1; k--)
  {
    ComplexMatrix next = (k + 1 <= d) ? c[static_cast<std::size_t>(k + 1)] : ComplexMatrix::Zero(n, m);
    c[static_cast<std::size_t>(k - 1)] =
        next + 2.0 * static_cast<double>(k) * coefficients[static_cast<std::size_t>(k)];
  }
  c.front() *= 0.5;
  c.pop_back();
  const double chain = 2.0 / (hi - lo);
  for (auto &ck : c)
  {
    ck *= chain;
  }
  out.coefficients = std::move(c);
  return out;
}

double ChebyshevMatrixPoly::tail_ratio() const
{
  double peak = 0.0;
  for (const auto &P : coefficients)
  {
    peak = std::max(peak, P.norm());
  }
  return peak > 0.0 ? coefficients.back().norm() / peak : 0.0;
}

ChebyshevMatrixPoly ChebyshevMatrixPoly::chopped(double rel_tol) const
{
  double peak = 0.0;
  for (const auto &P : coefficients)
  {
    peak = std::max(peak, P.norm());
  }
  std::size_t keep = coefficients.size();
  while (keep > 1 && coefficients[keep - 1].norm() <= rel_tol * peak)
  {
    keep--;
  }
  ChebyshevMatrixPoly out{{coefficients.begin(), coefficients.begin() + static_cast<std::ptrdiff_t>(keep)},
                          lo, hi};
  return out;
}

std::vector<double> chebyshev_nodes(Index d, double lo, double hi)
{
  check_interval(d, lo, hi);
  std::vector<double> x(static_cast<std::size_t>(d + 1));
  for (Index j = 0; j <= d; j++)
  {
    const double theta = (static_cast<double>(j) + 0.5) * std::numbers::pi / static_cast<double>(d + 1);
    x[static_cast<std::size_t>(j)] = lo + 0.5 * (std::cos(theta) + 1.0) * (hi - lo);
  }
  return x;
}

ChebyshevMatrixPoly interpolate_matrix(const MatrixSampler &sampler, Index d, double lo, double hi)
{
  const auto nodes = chebyshev_nodes(d, lo, hi);
  return transform(sample_all(sampler, nodes), d, lo, hi);
}

ChebyshevMatrixPoly reduce_interpolant(const MatrixSampler &sampler, const ComplexMatrix &S,
                                       Index d, double lo, double hi)
{
  const auto nodes = chebyshev_nodes(d, lo, hi);
  auto project = [&](Complex x) -> ComplexMatrix
  {
    const ComplexMatrix T = sampler(x);
    if (T.cols() != S.rows())
    {
      throw DimensionMismatch("reduce_interpolant: basis row count does not match T");
    }
    return S.adjoint() * (T * S);
  };
  return transform(sample_all(project, nodes), d, lo, hi);
}

ChebyshevMatrixPoly reduce_interpolant(const NepProblem &problem, const ComplexMatrix &S, Index d,
                                       double lo, double hi)
{
  if (S.rows() != problem.dimension())
  {
    throw DimensionMismatch("reduce_interpolant: basis row count does not match the problem");
  }
  const auto nodes = chebyshev_nodes(d, lo, hi);
  auto project = [&](Complex x) -> ComplexMatrix { return S.adjoint() * problem.apply(x, S); };
  return transform(sample_all(project, nodes), d, lo, hi);
}

}  // namespace rsrr
