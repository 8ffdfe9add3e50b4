// SPDX-License-Identifier: Apache-2.0

#include "rsrr/rsrr.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "rsrr/chebyshev.hpp"
#include "rsrr/parallel.hpp"

namespace rsrr
{

namespace
{

constexpr double NODE_PERTURBATION = 1e-8;

class Stopwatch
{
public:
  explicit Stopwatch(std::vector<StageTiming> &out) : out_(out) {}

  void lap(const std::string &stage)
  {
    const auto now = std::chrono::steady_clock::now();
    out_.push_back({stage, std::chrono::duration<double>(now - last_).count()});
    last_ = now;
  }

private:
  std::vector<StageTiming> &out_;
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

void fix_gauge(ComplexVector &v)
{
  const double nrm = v.norm();
  if (nrm == 0.0)
  {
    return;
  }
  v /= nrm;
  Index imax = 0;
  double amax = -1.0;
  for (Index i = 0; i < v.size(); i++)
  {
    if (std::abs(v(i)) > amax)
    {
      amax = std::abs(v(i));
      imax = i;
    }
  }
  v *= std::conj(v(imax)) / amax;
  v(imax) = amax;
}

enum class Scheme
{
  Sampling,
  Moment,
};

EigenSolution run_pipeline(const NepProblem &problem, const RsrrConfig &cfg, Scheme scheme)
{
  cfg.validate();
  EigenSolution out;
  out.scheme = scheme == Scheme::Sampling ? "rsrr" : "ssrr";
  Stopwatch clock(out.timings);

  const Contour &contour = cfg.contour;
  const double step = NODE_PERTURBATION * contour.scale();
  const QuadratureSet rule = contour.sampling_rule(cfg.N);
  const ProbeMatrix probe = make_probe(problem.dimension(), cfg.L, cfg.seed);

  ComplexMatrix source;
  {
    const ComplexMatrix samples =
        build_sampling_matrix(problem, rule, probe, step, &out.perturbed_sampling_nodes);
    if (scheme == Scheme::Sampling)
    {
      source = samples;
    }
    else
    {
      const Index Kp = cfg.K_prime > 0 ? cfg.K_prime : static_cast<Index>(rule.size());
      source = moment_matrix_from_samples(samples, rule, cfg.L, Kp, cfg.moment_basis,
                                          contour.shift(), contour.scale());
    }
  }
  for (std::size_t i : out.perturbed_sampling_nodes)
  {
    out.notices.push_back("sampling node " + std::to_string(i) +
                          " was singular and moved along the contour tangent");
  }
  clock.lap("sampling");

  const SubspaceBasis basis = orthonormal_basis(source, cfg.delta);
  out.source_singular_values = basis.singular_values;
  out.k_S = basis.k_S;
  out.well_resolved = basis.well_resolved();
  if (!out.well_resolved)
  {
    std::ostringstream msg;
    msg << "sigma_1 / sigma_min of the source matrix is below 1e14; increase N or L if "
           "eigenvalues are missing";
    out.notices.push_back(msg.str());
  }
  clock.lap("basis");

  const SumFormNep *sum = problem.sum_form();
  ReductionMode mode = cfg.mode;
  if (mode == ReductionMode::Auto)
  {
    mode = sum ? ReductionMode::ExplicitSum : ReductionMode::Chebyshev;
  }
  if (mode == ReductionMode::ExplicitSum && !sum)
  {
    throw InvalidParameter("mode: explicit-sum reduction needs a sum-form problem");
  }
  out.reduction = mode;
  std::optional<ReducedNep> T_S;
  if (mode == ReductionMode::ExplicitSum)
  {
    T_S.emplace(ReducedNep::project(*sum, basis.S));
  }
  else
  {
    const auto [lo, hi] = contour.real_interval();
    ChebyshevMatrixPoly poly = reduce_interpolant(problem, basis.S, cfg.cheb_degree, lo, hi);
    out.chebyshev_tail = poly.tail_ratio();
    // Coefficients at the rounding floor of the transform are dropped before the solve.
    const double floor = 8.0 * std::sqrt(static_cast<double>(cfg.cheb_degree + 1)) *
                         std::numeric_limits<double>::epsilon();
    ChebyshevMatrixPoly kept = poly.chopped(floor);
    if (kept.degree() < poly.degree())
    {
      std::ostringstream msg;
      msg << "Chebyshev series truncated from degree " << poly.degree() << " to " << kept.degree()
          << " (trailing coefficients at rounding level)";
      out.notices.push_back(msg.str());
    }
    T_S.emplace(std::move(kept));
  }
  clock.lap("reduction");

  ReducedSolution red = solve_reduced(*T_S, contour, cfg.N_S, cfg.K, cfg.tol_gap);
  out.count = red.count;
  out.hankel_singular_values = red.hankel_singular_values;
  out.discarded = red.discarded;
  out.perturbed_moment_nodes = red.perturbed_nodes;
  for (const Complex &z : out.discarded)
  {
    std::ostringstream msg;
    msg << "discarded Ritz value outside the contour: " << z;
    out.notices.push_back(msg.str());
  }
  clock.lap("reduced_solve");

  const ComplexMatrix V = basis.S * red.vectors;
  const std::vector<double> res = verify_residuals(problem, red.values, V);
  std::vector<double> scaled;
  if (sum)
  {
    scaled = scaled_residuals(*sum, red.values, V);
  }
  for (std::size_t j = 0; j < red.values.size(); j++)
  {
    Eigenpair p;
    p.lambda = red.values[j];
    p.v = V.col(static_cast<Index>(j));
    fix_gauge(p.v);
    p.residual = res[j];
    p.reduced_residual = red.residuals[j];
    if (sum)
    {
      p.scaled_residual = scaled[j];
    }
    if (p.residual > cfg.residual_flag)
    {
      out.flagged.push_back(j);
    }
    out.pairs.push_back(std::move(p));
  }
  clock.lap("verify");

  if (!out.flagged.empty())
  {
    std::ostringstream msg;
    msg << out.flagged.size() << " of " << out.pairs.size()
        << " eigenpairs exceed the residual threshold " << cfg.residual_flag;
    out.notices.push_back(msg.str());
    if (cfg.strict)
    {
      throw ResidualFailure(msg.str(), std::move(out));
    }
  }
  return out;
}

}  // namespace

std::string to_string(ReductionMode mode)
{
  switch (mode)
  {
    case ReductionMode::Auto:
      return "auto";
    case ReductionMode::ExplicitSum:
      return "explicit-sum";
    case ReductionMode::Chebyshev:
      return "chebyshev";
  }
  return "unknown";
}

ReductionMode reduction_mode_from_string(const std::string &name)
{
  if (name == "auto")
  {
    return ReductionMode::Auto;
  }
  if (name == "explicit-sum")
  {
    return ReductionMode::ExplicitSum;
  }
  if (name == "chebyshev")
  {
    return ReductionMode::Chebyshev;
  }
  throw InvalidParameter("unknown reduction mode '" + name +
                         "' (expected auto, explicit-sum or chebyshev)");
}

void RsrrConfig::validate() const
{
  auto require = [](bool ok, const std::string &msg)
  {
    if (!ok)
    {
      throw InvalidParameter(msg);
    }
  };
  require(L >= 1, "L must be >= 1");
  if (contour.is_ellipse())
  {
    require(N >= 1, "N must be >= 1");
  }
  else
  {
    require(N == 0 || N == contour.natural_size(),
            "N must be 0 or match the rectangle layout (" + std::to_string(contour.natural_size()) +
                ")");
  }
  require(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
  require(K >= 1, "K must be >= 1");
  require(N_S >= 2 * K, "N_S must be >= 2K");
  require(tol_gap > 1.0, "tol_gap must be > 1");
  require(residual_flag > 0.0, "residual_tol must be positive");
  require(residual_target > 0.0, "residual_target must be positive");
  require(cheb_degree >= 1, "cheb_degree must be >= 1");
  require(K_prime >= 0, "K_prime must be >= 0");
}

std::vector<Complex> EigenSolution::eigenvalues() const
{
  std::vector<Complex> out;
  for (const auto &p : pairs)
  {
    out.push_back(p.lambda);
  }
  return out;
}

std::vector<double> EigenSolution::residuals() const
{
  std::vector<double> out;
  for (const auto &p : pairs)
  {
    out.push_back(p.residual);
  }
  return out;
}

double EigenSolution::max_residual() const
{
  double m = 0.0;
  for (const auto &p : pairs)
  {
    m = std::max(m, p.residual);
  }
  return m;
}

EigenSolution solve_rsrr(const NepProblem &problem, const RsrrConfig &config)
{
  return run_pipeline(problem, config, Scheme::Sampling);
}

EigenSolution solve_ssrr(const NepProblem &problem, const RsrrConfig &config)
{
  return run_pipeline(problem, config, Scheme::Moment);
}

std::vector<double> verify_residuals(const NepProblem &problem, const std::vector<Complex> &lambdas,
                                     const ComplexMatrix &V)
{
  if (static_cast<Index>(lambdas.size()) != V.cols())
  {
    throw DimensionMismatch("verify_residuals: one eigenvalue per column required");
  }
  std::vector<double> res(lambdas.size(), 0.0);
  parallel_for(lambdas.size(),
               [&](std::size_t j)
               {
                 const ComplexMatrix v = V.col(static_cast<Index>(j));
                 res[j] = problem.apply(lambdas[j], v).norm() / v.norm();
               });
  return res;
}

std::vector<double> scaled_residuals(const SumFormNep &problem, const std::vector<Complex> &lambdas,
                                     const ComplexMatrix &V)
{
  if (static_cast<Index>(lambdas.size()) != V.cols())
  {
    throw DimensionMismatch("scaled_residuals: one eigenvalue per column required");
  }
  std::vector<double> norms;
  for (const auto &t : problem.terms())
  {
    double worst = 0.0;
    for (Index c = 0; c < t.matrix.outerSize(); c++)
    {
      double col = 0.0;
      for (SparseMatrix::InnerIterator it(t.matrix, c); it; ++it)
      {
        col += std::abs(it.value());
      }
      worst = std::max(worst, col);
    }
    norms.push_back(worst);
  }
  const std::vector<double> res = verify_residuals(problem, lambdas, V);
  std::vector<double> out(lambdas.size());
  for (std::size_t j = 0; j < lambdas.size(); j++)
  {
    double scale = 0.0;
    for (std::size_t i = 0; i < norms.size(); i++)
    {
      scale += std::abs(problem.terms()[i].f.value(lambdas[j])) * norms[i];
    }
    out[j] = scale > 0.0 ? res[j] / scale : res[j];
  }
  return out;
}

}  // namespace rsrr
