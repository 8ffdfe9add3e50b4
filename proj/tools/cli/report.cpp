// SPDX-License-Identifier: Apache-2.0

#include "cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>

#include "rsrr/errors.hpp"
#include "rsrr/matrix_market.hpp"

namespace rsrr::app
{

namespace
{

json complex_json(Complex z)
{
  return json::array({z.real(), z.imag()});
}

json real_list(const RealVector &v)
{
  json out = json::array();
  for (Index i = 0; i < v.size(); i++)
  {
    out.push_back(v(i));
  }
  return out;
}

void strip(json &j)
{
  if (j.is_object())
  {
    j.erase("timings");
    for (auto &[key, value] : j.items())
    {
      strip(value);
    }
  }
  else if (j.is_array())
  {
    for (auto &value : j)
    {
      strip(value);
    }
  }
}

}  // namespace

double median(std::vector<double> values)
{
  if (values.empty())
  {
    return std::numeric_limits<double>::quiet_NaN();
  }
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size() / 2;
  return values.size() % 2 ? values[m] : 0.5 * (values[m - 1] + values[m]);
}

json solution_to_json(const EigenSolution &s)
{
  json pairs = json::array();
  for (std::size_t j = 0; j < s.pairs.size(); j++)
  {
    const auto &p = s.pairs[j];
    json e = {{"index", j},
              {"lambda", complex_json(p.lambda)},
              {"residual", p.residual},
              {"reduced_residual", p.reduced_residual}};
    if (p.scaled_residual)
    {
      e["scaled_residual"] = *p.scaled_residual;
    }
    pairs.push_back(e);
  }
  json count = {{"winding", complex_json(s.count.winding)},
                {"winding_count", s.count.winding_count},
                {"winding_integral", s.count.winding_integral},
                {"gap_index", s.count.gap_index ? json(*s.count.gap_index) : json(nullptr)},
                {"gap_ratio", s.count.gap_ratio},
                {"chosen", s.count.chosen},
                {"strategy", to_string(s.count.strategy)},
                {"candidates", s.count.candidates}};
  json discarded = json::array();
  for (const Complex &z : s.discarded)
  {
    discarded.push_back(complex_json(z));
  }
  json timings = json::object();
  for (const auto &t : s.timings)
  {
    timings[t.stage] = t.seconds;
  }
  json out = {{"scheme", s.scheme},
              {"eigenpairs", pairs},
              {"count", count},
              {"basis",
               {{"k_S", s.k_S},
                {"well_resolved", s.well_resolved},
                {"singular_values", real_list(s.source_singular_values)}}},
              {"reduction", to_string(s.reduction)},
              {"chebyshev_tail", s.chebyshev_tail ? json(*s.chebyshev_tail) : json(nullptr)},
              {"hankel_singular_values", real_list(s.hankel_singular_values)},
              {"discarded", discarded},
              {"flagged", s.flagged},
              {"perturbed_sampling_nodes", s.perturbed_sampling_nodes},
              {"perturbed_moment_nodes", s.perturbed_moment_nodes},
              {"notices", s.notices},
              {"max_residual", s.max_residual()},
              {"timings", timings}};
  return out;
}

json make_report(const std::string &command, const RunConfig &config, const NepProblem &problem,
                 const std::vector<json> &runs, const std::optional<json> &comparison)
{
  json report = {{"schema_version", REPORT_SCHEMA_VERSION},
                 {"code_version", RSRR_VERSION},
                 {"command", command},
                 {"problem", {{"name", problem.name()}, {"dimension", problem.dimension()}}},
                 {"config", to_json(config)},
                 {"runs", runs}};
  if (comparison)
  {
    report["comparison"] = *comparison;
  }
  return report;
}

json comparison_to_json(const EigenSolution &rsrr, const std::optional<EigenSolution> &ssrr,
                        const std::vector<EigenSolution> &sweep, const std::vector<Index> &sweep_k)
{
  json out;
  out["median_residual_rsrr"] = median(rsrr.residuals());
  out["rank_sampling"] = rsrr.k_S;
  if (ssrr)
  {
    out["median_residual_ssrr"] = median(ssrr->residuals());
    out["rank_moment"] = ssrr->k_S;
    out["rank_dominance"] = rsrr.k_S >= ssrr->k_S;
    json rows = json::array();
    for (const auto &p : rsrr.pairs)
    {
      json row = {{"lambda_rsrr", complex_json(p.lambda)}, {"residual_rsrr", p.residual}};
      const Eigenpair *best = nullptr;
      for (const auto &q : ssrr->pairs)
      {
        if (!best || std::abs(q.lambda - p.lambda) < std::abs(best->lambda - p.lambda))
        {
          best = &q;
        }
      }
      if (best)
      {
        row["lambda_ssrr"] = complex_json(best->lambda);
        row["residual_ssrr"] = best->residual;
      }
      rows.push_back(row);
    }
    out["pairs"] = rows;
  }
  json sweep_rows = json::array();
  for (std::size_t i = 0; i < sweep.size(); i++)
  {
    std::vector<Eigenpair> pairs = sweep[i].pairs;
    std::sort(pairs.begin(), pairs.end(), [](const Eigenpair &a, const Eigenpair &b)
              { return std::abs(a.lambda) < std::abs(b.lambda); });
    json res = json::array();
    for (const auto &p : pairs)
    {
      res.push_back(p.residual);
    }
    sweep_rows.push_back({{"K_prime", sweep_k[i]},
                          {"rank_sampling", rsrr.k_S},
                          {"rank_moment", sweep[i].k_S},
                          {"rank_dominance", rsrr.k_S >= sweep[i].k_S},
                          {"count", sweep[i].pairs.size()},
                          {"median_residual", median(sweep[i].residuals())},
                          {"residuals_by_modulus", res}});
  }
  out["k_prime_sweep"] = sweep_rows;
  return out;
}

json strip_timings(json report)
{
  strip(report);
  return report;
}

void write_json(const std::string &path, const json &doc, std::ostream &fallback)
{
  if (path.empty())
  {
    fallback << doc.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out)
  {
    throw ConfigError("output.report", "cannot write " + path);
  }
  out << doc.dump(2) << "\n";
}

void write_eigenvalue_csv(std::ostream &out, const EigenSolution &s)
{
  out << "index,re,im,residual,reduced_residual\n";
  out << std::setprecision(17);
  for (std::size_t j = 0; j < s.pairs.size(); j++)
  {
    const auto &p = s.pairs[j];
    out << j << "," << p.lambda.real() << "," << p.lambda.imag() << "," << p.residual << ","
        << p.reduced_residual << "\n";
  }
}

void write_eigenvectors(const std::string &path, const EigenSolution &s)
{
  const Index n = s.pairs.empty() ? 0 : s.pairs.front().v.size();
  ComplexMatrix V(n, static_cast<Index>(s.pairs.size()));
  for (std::size_t j = 0; j < s.pairs.size(); j++)
  {
    V.col(static_cast<Index>(j)) = s.pairs[j].v;
  }
  mm::write_matrix_market(path, V, mm::Layout::Array);
}

}  // namespace rsrr::app
