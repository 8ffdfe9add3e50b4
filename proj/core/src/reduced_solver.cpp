// SPDX-License-Identifier: Apache-2.0

#include "rsrr/reduced_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "rsrr/errors.hpp"
#include "rsrr/parallel.hpp"

namespace rsrr
{

namespace
{

constexpr double NODE_PERTURBATION = 1e-8;
constexpr double GAP_FLOOR = 1e-16;
constexpr double WINDING_SLACK = 0.1;
constexpr double RANK_COLLAPSE = 1e-15;
constexpr std::size_t NODE_BATCH = 32;

struct NodeInverse
{
  ComplexMatrix inverse;
  Complex trace{0.0, 0.0};  // tr(T_S^{-1} T_S')
  bool moved = false;
};

NodeInverse invert_at(const ReducedNep &T_S, const QuadratureSet &rule, std::size_t i, double step,
                      bool with_trace)
{
  const Index k = T_S.dimension();
  NodeInverse out;
  Complex z = rule.nodes[i];
  try
  {
    out.inverse = linalg::solve_dense(T_S.evaluate(z), ComplexMatrix::Identity(k, k));
  }
  catch (const SingularMatrix &)
  {
    z += step * rule.tangents[i];
    try
    {
      out.inverse = linalg::solve_dense(T_S.evaluate(z), ComplexMatrix::Identity(k, k));
      out.moved = true;
    }
    catch (const SingularMatrix &)
    {
      std::ostringstream msg;
      msg << "reduced T_S(z) singular at moment node " << i << " (z = " << rule.nodes[i]
          << ") and after perturbation";
      throw SingularMatrix(msg.str(), i);
    }
  }
  if (with_trace)
  {
    const ComplexMatrix dT = T_S.derivative(z);
    out.trace = out.inverse.cwiseProduct(dT.transpose()).sum();
  }
  return out;
}

// Visits the node inverses in node order, computing each batch in parallel.
template <class Visit>
void sweep_nodes(const ReducedNep &T_S, const QuadratureSet &rule, double step, bool with_trace,
                 Visit &&visit)
{
  std::vector<NodeInverse> batch;
  for (std::size_t start = 0; start < rule.size(); start += NODE_BATCH)
  {
    const std::size_t len = std::min(NODE_BATCH, rule.size() - start);
    batch.assign(len, {});
    parallel_for(len, [&](std::size_t b)
                 { batch[b] = invert_at(T_S, rule, start + b, step, with_trace); });
    for (std::size_t b = 0; b < len; b++)
    {
      visit(start + b, batch[b]);
    }
  }
}

double max_residual(const ReducedNep &T_S, const ReducedEigenpairs &p)
{
  double worst = 0.0;
  for (std::size_t j = 0; j < p.values.size(); j++)
  {
    const ComplexVector g = p.vectors.col(static_cast<Index>(j));
    worst = std::max(worst, (T_S.evaluate(p.values[j]) * g).norm() / g.norm());
  }
  return worst;
}

}  // namespace

std::string to_string(CountStrategy s)
{
  switch (s)
  {
    case CountStrategy::Agreement:
      return "agreement";
    case CountStrategy::Winding:
      return "winding";
    case CountStrategy::Gap:
      return "gap";
    case CountStrategy::Residual:
      return "residual";
  }
  return "unknown";
}

ReducedNep::ReducedNep(SumForm form) : form_(std::move(form))
{
  const auto &f = std::get<SumForm>(form_);
  if (f.coefficients.empty() || f.coefficients.size() != f.functions.size())
  {
    throw InvalidParameter("ReducedNep: need one function per coefficient matrix");
  }
  k_ = f.coefficients.front().rows();
  for (const auto &C : f.coefficients)
  {
    if (C.rows() != k_ || C.cols() != k_)
    {
      throw DimensionMismatch("ReducedNep: coefficient matrices must share a square size");
    }
  }
}

ReducedNep::ReducedNep(ChebyshevMatrixPoly poly) : form_(std::move(poly))
{
  const auto &p = std::get<ChebyshevMatrixPoly>(form_);
  if (p.coefficients.empty() || p.coefficients.front().rows() != p.coefficients.front().cols())
  {
    throw InvalidParameter("ReducedNep: Chebyshev form needs square coefficients");
  }
  k_ = p.dimension();
  derivative_poly_ = p.derivative();
}

ReducedNep ReducedNep::project(const SumFormNep &problem, const ComplexMatrix &S)
{
  if (S.rows() != problem.dimension())
  {
    throw DimensionMismatch("ReducedNep::project: basis row count does not match the problem");
  }
  SumForm form;
  for (const auto &t : problem.terms())
  {
    form.coefficients.push_back(S.adjoint() * (t.matrix * S));
    form.functions.push_back(t.f);
  }
  return ReducedNep(std::move(form));
}

ComplexMatrix ReducedNep::evaluate(Complex z) const
{
  if (const auto *p = std::get_if<ChebyshevMatrixPoly>(&form_))
  {
    return p->evaluate(z);
  }
  const auto &f = std::get<SumForm>(form_);
  ComplexMatrix T = ComplexMatrix::Zero(k_, k_);
  for (std::size_t j = 0; j < f.coefficients.size(); j++)
  {
    T += f.functions[j].value(z) * f.coefficients[j];
  }
  return T;
}

ComplexMatrix ReducedNep::derivative(Complex z) const
{
  if (derivative_poly_)
  {
    return derivative_poly_->evaluate(z);
  }
  const auto &f = std::get<SumForm>(form_);
  ComplexMatrix T = ComplexMatrix::Zero(k_, k_);
  for (std::size_t j = 0; j < f.coefficients.size(); j++)
  {
    T += f.functions[j].derivative(z) * f.coefficients[j];
  }
  return T;
}

MomentSet reduced_moments(const ReducedNep &T_S, const Contour &contour, Index N_S, Index K)
{
  if (K < 1)
  {
    throw InvalidParameter("reduced_moments: K must be >= 1");
  }
  if (N_S < 2 * K)
  {
    throw InvalidParameter("reduced_moments: N_S must be >= 2K");
  }
  const QuadratureSet rule = contour.moment_rule(N_S);
  const Index k = T_S.dimension();
  MomentSet M;
  M.shift = contour.shift();
  M.scale = contour.scale();
  M.N_S = static_cast<Index>(rule.size());
  M.K = K;
  M.A.assign(static_cast<std::size_t>(2 * K), ComplexMatrix::Zero(k, k));
  const double step = NODE_PERTURBATION * M.scale;
  sweep_nodes(T_S, rule, step, true,
              [&](std::size_t i, const NodeInverse &node)
              {
                const Complex x = (rule.nodes[i] - M.shift) / M.scale;
                Complex c = rule.weights[i];
                for (auto &A : M.A)
                {
                  A += c * node.inverse;
                  c *= x;
                }
                M.winding += rule.weights[i] * node.trace;
                if (node.moved)
                {
                  M.perturbed_nodes.push_back(i);
                }
              });
  return M;
}

std::pair<ComplexMatrix, ComplexMatrix> hankel_pencil(const MomentSet &M)
{
  if (M.K < 1 || static_cast<Index>(M.A.size()) != 2 * M.K)
  {
    throw InvalidParameter("hankel_pencil: moment set must hold 2K matrices");
  }
  const Index k = M.A.front().rows(), K = M.K;
  ComplexMatrix H(K * k, K * k), Hs(K * k, K * k);
  for (Index i = 0; i < K; i++)
  {
    for (Index j = 0; j < K; j++)
    {
      H.block(i * k, j * k, k, k) = M.A[static_cast<std::size_t>(i + j)];
      Hs.block(i * k, j * k, k, k) = M.A[static_cast<std::size_t>(i + j + 1)];
    }
  }
  return {std::move(H), std::move(Hs)};
}

EigencountReport count_eigenvalues(const MomentSet &M, const RealVector &s, double tol_gap)
{
  EigencountReport r;
  r.winding = M.winding;
  const double w = M.winding.real();
  r.winding_count = static_cast<Index>(std::max(0.0, std::round(w)));
  r.winding_integral = std::abs(w - std::round(w)) <= WINDING_SLACK;

  if (s.size() >= 2 && s(0) > 0.0)
  {
    const double floor = GAP_FLOOR * s(0);
    for (Index j = 0; j + 1 < s.size(); j++)
    {
      const double ratio = s(j) / std::max(s(j + 1), floor);
      if (ratio > r.gap_ratio)
      {
        r.gap_ratio = ratio;
        r.gap_index = j + 1;
      }
    }
  }
  const bool gap_ok = r.gap_index.has_value() && r.gap_ratio >= tol_gap;

  if (gap_ok && r.winding_integral)
  {
    if (*r.gap_index == r.winding_count)
    {
      r.chosen = r.winding_count;
      r.strategy = CountStrategy::Agreement;
    }
    else
    {
      r.strategy = CountStrategy::Residual;
      r.candidates = {*r.gap_index, r.winding_count};
      r.chosen = *r.gap_index;
    }
  }
  else if (gap_ok)
  {
    r.chosen = *r.gap_index;
    r.strategy = CountStrategy::Gap;
  }
  else if (r.winding_integral)
  {
    r.chosen = r.winding_count;
    r.strategy = CountStrategy::Winding;
  }
  else
  {
    std::ostringstream msg;
    msg << "winding number " << w << " is not near an integer and the largest singular value gap ("
        << r.gap_ratio << ") is below tol_gap = " << tol_gap
        << "; refine the quadrature or move the contour away from eigenvalues";
    throw NonIntegerWinding(msg.str(), w);
  }
  return r;
}

EigencountReport count_eigenvalues(const ReducedNep &T_S, const Contour &contour, Index N_S,
                                   const linalg::SvdResult &H_svd, double tol_gap)
{
  const QuadratureSet rule = contour.moment_rule(N_S);
  MomentSet M;
  M.shift = contour.shift();
  M.scale = contour.scale();
  M.N_S = static_cast<Index>(rule.size());
  sweep_nodes(T_S, rule, NODE_PERTURBATION * M.scale, true,
              [&](std::size_t i, const NodeInverse &node) { M.winding += rule.weights[i] * node.trace; });
  return count_eigenvalues(M, H_svd.singular_values, tol_gap);
}

ReducedEigenpairs extract_eigenpairs(const MomentSet &M, const linalg::SvdResult &H_svd,
                                     const ComplexMatrix &H_shift, Index count,
                                     const Contour &contour)
{
  ReducedEigenpairs out;
  const Index k = M.A.front().rows();
  if (count == 0)
  {
    out.vectors.resize(k, 0);
    return out;
  }
  const auto &s = H_svd.singular_values;
  if (count > s.size())
  {
    throw InvalidParameter("extract_eigenpairs: count " + std::to_string(count) +
                           " exceeds the Hankel dimension " + std::to_string(s.size()) +
                           "; increase K");
  }
  if (!(s(count - 1) > 0.0) || s(count - 1) < RANK_COLLAPSE * s(0))
  {
    throw RankCollapse("extract_eigenpairs: sigma_" + std::to_string(count) +
                       " / sigma_1 is below 1e-15");
  }
  const ComplexMatrix V0 = H_svd.U.leftCols(count);
  const ComplexMatrix W0S =
      H_svd.V.leftCols(count) * s.head(count).cwiseInverse().cast<Complex>().asDiagonal();
  const ComplexMatrix A = V0.adjoint() * H_shift * W0S;
  const auto eig = linalg::eig_dense(A);

  ComplexMatrix Hr(k, M.K * k);
  for (Index j = 0; j < M.K; j++)
  {
    Hr.middleCols(j * k, k) = M.A[static_cast<std::size_t>(j)];
  }
  const ComplexMatrix G = Hr * W0S * eig.vectors;

  std::vector<Index> keep;
  for (Index j = 0; j < count; j++)
  {
    const Complex lambda = M.scale * eig.values(j) + M.shift;
    if (contour.contains(lambda))
    {
      out.values.push_back(lambda);
      keep.push_back(j);
    }
    else
    {
      out.discarded.push_back(lambda);
    }
  }
  out.vectors.resize(k, static_cast<Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); j++)
  {
    const ComplexVector g = G.col(keep[j]);
    const double nrm = g.norm();
    out.vectors.col(static_cast<Index>(j)) = nrm > 0.0 ? ComplexVector(g / nrm) : g;
  }
  return out;
}

ReducedSolution solve_reduced(const ReducedNep &T_S, const Contour &contour, Index N_S, Index K,
                              double tol_gap)
{
  const MomentSet M = reduced_moments(T_S, contour, N_S, K);
  const auto [H, H_shift] = hankel_pencil(M);
  const auto H_svd = linalg::svd(H);

  ReducedSolution out;
  out.count = count_eigenvalues(M, H_svd.singular_values, tol_gap);
  out.hankel_singular_values = H_svd.singular_values;
  out.perturbed_nodes = M.perturbed_nodes;

  ReducedEigenpairs pairs;
  if (out.count.strategy == CountStrategy::Residual)
  {
    // Counts disagree: extract both and keep the set with the smaller worst residual.
    std::optional<ReducedEigenpairs> best;
    double best_res = 0.0;
    for (Index c : out.count.candidates)
    {
      try
      {
        auto p = extract_eigenpairs(M, H_svd, H_shift, c, contour);
        const double res = max_residual(T_S, p);
        if (!best || res < best_res)
        {
          best = std::move(p);
          best_res = res;
          out.count.chosen = c;
        }
      }
      catch (const RankCollapse &)
      {
      }
      catch (const InvalidParameter &)
      {
      }
    }
    if (!best)
    {
      throw RankCollapse("solve_reduced: neither candidate eigenvalue count could be extracted");
    }
    pairs = std::move(*best);
  }
  else
  {
    pairs = extract_eigenpairs(M, H_svd, H_shift, out.count.chosen, contour);
  }

  std::vector<std::size_t> order(pairs.values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b)
                   {
                     const Complex &x = pairs.values[a], &y = pairs.values[b];
                     return x.real() < y.real() || (x.real() == y.real() && x.imag() < y.imag());
                   });
  out.vectors.resize(T_S.dimension(), static_cast<Index>(order.size()));
  for (std::size_t j = 0; j < order.size(); j++)
  {
    out.values.push_back(pairs.values[order[j]]);
    out.vectors.col(static_cast<Index>(j)) = pairs.vectors.col(static_cast<Index>(order[j]));
    const ComplexVector g = out.vectors.col(static_cast<Index>(j));
    out.residuals.push_back((T_S.evaluate(out.values.back()) * g).norm() / g.norm());
  }
  out.discarded = std::move(pairs.discarded);
  return out;
}

}  // namespace rsrr
