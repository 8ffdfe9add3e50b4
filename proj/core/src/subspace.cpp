// SPDX-License-Identifier: Apache-2.0

#include "rsrr/subspace.hpp"

#include <ostream>
#include <random>
#include <sstream>

#include "rsrr/errors.hpp"
#include "rsrr/linalg.hpp"
#include "rsrr/parallel.hpp"
#include "rsrr/scalar_function.hpp"

namespace rsrr
{

namespace
{

Complex basis_value(MomentBasis basis, Complex x, int alpha)
{
  if (basis == MomentBasis::Chebyshev)
  {
    return chebyshev_t(alpha, x);
  }
  Complex r = 1.0;
  for (int k = 0; k < alpha; k++)
  {
    r *= x;
  }
  return r;
}

void check_probe(const NepProblem &problem, const ProbeMatrix &probe)
{
  if (probe.U.rows() != problem.dimension() || probe.U.cols() != probe.L || probe.L < 1)
  {
    throw DimensionMismatch("probe matrix is " + std::to_string(probe.U.rows()) + "x" +
                            std::to_string(probe.U.cols()) + ", problem dimension is " +
                            std::to_string(problem.dimension()));
  }
}

}  // namespace

ProbeMatrix make_probe(Index n, Index L, std::uint64_t seed)
{
  if (n < 1 || L < 1)
  {
    throw InvalidParameter("make_probe: n and L must be >= 1");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  ComplexMatrix U(n, L);
  for (Index j = 0; j < L; j++)
  {
    for (Index i = 0; i < n; i++)
    {
      const double re = normal(rng);
      const double im = normal(rng);
      U(i, j) = Complex(re, im);
    }
  }
  const RealVector s = linalg::singular_values(U);
  if (s.size() < L || s(s.size() - 1) < 1e-8 * s(0))
  {
    throw InvalidParameter("make_probe: probe columns are numerically dependent (L > n?)");
  }
  return {std::move(U), L, seed};
}

bool SubspaceBasis::well_resolved() const
{
  const Index m = singular_values.size();
  if (k_S > 0 && k_S == S.rows())
  {
    return true;  // the basis already spans the whole space
  }
  return m > 0 && singular_values(m - 1) * 1e14 <= singular_values(0);
}

ComplexMatrix build_sampling_matrix(const NepProblem &problem, std::span<const Complex> nodes,
                                    const ProbeMatrix &probe)
{
  check_probe(problem, probe);
  const Index n = problem.dimension(), L = probe.L;
  ComplexMatrix S(n, static_cast<Index>(nodes.size()) * L);
  parallel_for(nodes.size(),
               [&](std::size_t i)
               {
                 try
                 {
                   S.middleCols(static_cast<Index>(i) * L, L) = problem.solve(nodes[i], probe.U);
                 }
                 catch (const SingularMatrix &e)
                 {
                   throw SingularMatrix(std::string(e.what()) + " at sampling node " +
                                            std::to_string(i),
                                        i);
                 }
               });
  return S;
}

ComplexMatrix build_sampling_matrix(const NepProblem &problem, const QuadratureSet &rule,
                                    const ProbeMatrix &probe, double perturb_step,
                                    std::vector<std::size_t> *perturbed)
{
  check_probe(problem, probe);
  const Index n = problem.dimension(), L = probe.L;
  ComplexMatrix S(n, static_cast<Index>(rule.size()) * L);
  std::vector<char> moved(rule.size(), 0);
  parallel_for(rule.size(),
               [&](std::size_t i)
               {
                 auto block = S.middleCols(static_cast<Index>(i) * L, L);
                 try
                 {
                   block = problem.solve(rule.nodes[i], probe.U);
                   return;
                 }
                 catch (const SingularMatrix &)
                 {
                   if (perturb_step <= 0.0)
                   {
                     throw SingularMatrix("singular T(z) at sampling node " + std::to_string(i), i);
                   }
                 }
                 const Complex z = rule.nodes[i] + perturb_step * rule.tangents[i];
                 try
                 {
                   block = problem.solve(z, probe.U);
                   moved[i] = 1;
                 }
                 catch (const SingularMatrix &)
                 {
                   std::ostringstream msg;
                   msg << "singular T(z) at sampling node " << i << " (z = " << rule.nodes[i]
                       << ") and again after perturbation to " << z;
                   throw SingularMatrix(msg.str(), i);
                 }
               });
  if (perturbed)
  {
    for (std::size_t i = 0; i < moved.size(); i++)
    {
      if (moved[i])
      {
        perturbed->push_back(i);
      }
    }
  }
  return S;
}

ComplexMatrix moment_matrix_from_samples(const ComplexMatrix &samples, const QuadratureSet &rule,
                                         Index L, Index K_prime, MomentBasis basis, Complex shift,
                                         double scale)
{
  if (K_prime < 1)
  {
    throw InvalidParameter("moment matrix: K' must be >= 1");
  }
  if (samples.cols() != static_cast<Index>(rule.size()) * L)
  {
    throw DimensionMismatch("moment matrix: sample block count does not match the rule");
  }
  const Index n = samples.rows();
  ComplexMatrix M = ComplexMatrix::Zero(n, K_prime * L);
  for (std::size_t i = 0; i < rule.size(); i++)
  {
    const Complex x = (rule.nodes[i] - shift) / scale;
    const auto Y = samples.middleCols(static_cast<Index>(i) * L, L);
    for (Index alpha = 0; alpha < K_prime; alpha++)
    {
      M.middleCols(alpha * L, L) += (rule.weights[i] * basis_value(basis, x, static_cast<int>(alpha))) * Y;
    }
  }
  return M;
}

ComplexMatrix build_moment_matrix(const NepProblem &problem, const QuadratureSet &rule,
                                  const ProbeMatrix &probe, Index K_prime, MomentBasis basis,
                                  Complex shift, double scale, double perturb_step)
{
  if (K_prime < 1)
  {
    throw InvalidParameter("moment matrix: K' must be >= 1");
  }
  const ComplexMatrix samples = build_sampling_matrix(problem, rule, probe, perturb_step);
  return moment_matrix_from_samples(samples, rule, probe.L, K_prime, basis, shift, scale);
}

SubspaceBasis orthonormal_basis(const ComplexMatrix &source, double delta)
{
  if (!(delta > 0.0 && delta < 1.0))
  {
    throw InvalidParameter("orthonormal_basis: delta must lie in (0, 1)");
  }
  if (source.size() == 0)
  {
    throw EmptyBasis("orthonormal_basis: source matrix is empty");
  }
  auto dec = linalg::svd(source);
  const Index k = linalg::numerical_rank(dec.singular_values, delta);
  if (k == 0)
  {
    throw EmptyBasis("orthonormal_basis: source matrix is numerically zero");
  }
  return {dec.U.leftCols(k), std::move(dec.singular_values), k, delta};
}

std::vector<RankRow> vandermonde_rank_experiment(std::span<const double> eigs, Index K_max,
                                                 double tol, MomentBasis basis)
{
  if (K_max < 1 || eigs.empty())
  {
    throw InvalidParameter("rank experiment: need K_max >= 1 and at least one eigenvalue");
  }
  const Index m = static_cast<Index>(eigs.size());
  ComplexMatrix full(m, K_max);
  for (Index i = 0; i < m; i++)
  {
    for (Index k = 0; k < K_max; k++)
    {
      full(i, k) = basis_value(basis, eigs[static_cast<std::size_t>(i)], static_cast<int>(k));
    }
  }
  std::vector<RankRow> rows;
  rows.reserve(static_cast<std::size_t>(K_max));
  for (Index K = 1; K <= K_max; K++)
  {
    const RealVector s = linalg::singular_values(full.leftCols(K));
    rows.push_back({K, linalg::numerical_rank(s, tol)});
  }
  return rows;
}

void write_rank_csv(std::ostream &out, const std::vector<RankRow> &rows)
{
  out << "K_prime,rank\n";
  for (const auto &r : rows)
  {
    out << r.K_prime << ',' << r.rank << '\n';
  }
}

std::string to_string(MomentBasis basis)
{
  return basis == MomentBasis::Chebyshev ? "chebyshev" : "monomial";
}

MomentBasis moment_basis_from_string(const std::string &name)
{
  if (name == "monomial")
  {
    return MomentBasis::Monomial;
  }
  if (name == "chebyshev")
  {
    return MomentBasis::Chebyshev;
  }
  throw InvalidParameter("unknown moment basis '" + name + "' (monomial|chebyshev)");
}

}  // namespace rsrr
