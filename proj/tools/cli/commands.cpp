// SPDX-License-Identifier: Apache-2.0

#include "cli/commands.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "cli/presets.hpp"
#include "cli/report.hpp"
#include "rsrr/parallel.hpp"

namespace rsrr::app
{

namespace
{

std::string fmt(double x)
{
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", x);
  return buf;
}

void summarize(const EigenSolution &s, std::ostream &log)
{
  log << s.scheme << ": " << s.pairs.size() << " eigenpairs, k_S = " << s.k_S
      << ", max residual " << fmt(s.max_residual()) << ", count " << to_string(s.count.strategy)
      << " (winding " << std::fixed << std::setprecision(4) << s.count.winding.real()
      << std::defaultfloat << ", gap index "
      << (s.count.gap_index ? std::to_string(*s.count.gap_index) : "-") << ")\n";
  for (const auto &n : s.notices)
  {
    log << "  note: " << n << "\n";
  }
}

void write_outputs(const RunConfig &config, const EigenSolution &s)
{
  if (!config.output.csv.empty())
  {
    std::ofstream csv(config.output.csv);
    if (!csv)
    {
      throw ConfigError("output.csv", "cannot write " + config.output.csv);
    }
    write_eigenvalue_csv(csv, s);
  }
  if (!config.output.eigenvectors.empty())
  {
    write_eigenvectors(config.output.eigenvectors, s);
  }
}

// Runs RSRR; a residual failure still produces the report before propagating.
void solve_and_report(const RunConfig &config, const std::string &command, std::ostream &out,
                      std::ostream &log)
{
  const auto problem = make_problem(config);
  try
  {
    const EigenSolution s = solve_rsrr(*problem, config.rsrr);
    summarize(s, log);
    write_json(config.output.report,
               make_report(command, config, *problem, {solution_to_json(s)}), out);
    write_outputs(config, s);
  }
  catch (const ResidualFailure &e)
  {
    summarize(e.solution(), log);
    write_json(config.output.report,
               make_report(command, config, *problem, {solution_to_json(e.solution())}), out);
    write_outputs(config, e.solution());
    throw;
  }
}

}  // namespace

void cmd_solve(const RunConfig &config, std::ostream &out, std::ostream &log)
{
  solve_and_report(config, "solve", out, log);
}

void cmd_compare(const RunConfig &config, std::ostream &out, std::ostream &log)
{
  const auto problem = make_problem(config);
  RsrrConfig c = config.rsrr;
  c.strict = false;
  const EigenSolution rsrr = solve_rsrr(*problem, c);
  summarize(rsrr, log);
  std::vector<json> runs{solution_to_json(rsrr)};

  std::optional<EigenSolution> ssrr;
  try
  {
    ssrr = solve_ssrr(*problem, c);
    summarize(*ssrr, log);
    runs.push_back(solution_to_json(*ssrr));
  }
  catch (const Error &e)
  {
    log << "ssrr: failed: " << e.what() << "\n";
    runs.push_back({{"scheme", "ssrr"}, {"error", e.what()}});
  }

  std::vector<EigenSolution> sweep;
  std::vector<Index> sweep_k;
  for (Index k : config.compare.k_prime_sweep)
  {
    RsrrConfig ck = c;
    ck.K_prime = k;
    try
    {
      sweep.push_back(solve_ssrr(*problem, ck));
      sweep_k.push_back(k);
      log << "ssrr K' = " << k << ": " << sweep.back().pairs.size() << " pairs, median residual "
          << fmt(median(sweep.back().residuals())) << "\n";
    }
    catch (const Error &e)
    {
      log << "ssrr K' = " << k << ": failed: " << e.what() << "\n";
    }
  }
  json cmp = comparison_to_json(rsrr, ssrr, sweep, sweep_k);
  if (ssrr)
  {
    log << "median residual rsrr " << fmt(cmp["median_residual_rsrr"].get<double>()) << ", ssrr "
        << fmt(cmp["median_residual_ssrr"].get<double>()) << "; rank(S) = " << rsrr.k_S
        << ", rank(M) = " << ssrr->k_S << "\n";
  }
  write_json(config.output.report, make_report("compare", config, *problem, runs, cmp), out);
  write_outputs(config, rsrr);
}

void cmd_rank_experiment(const RankExperimentArgs &args, std::ostream &out, std::ostream &log)
{
  if (args.count < 1)
  {
    throw ConfigError("--count", "must be >= 1");
  }
  if (args.count > 1 && !(args.lo < args.hi))
  {
    throw ConfigError("--eigs-hi", "must exceed --eigs-lo");
  }
  if (!(args.tol > 0.0 && args.tol < 1.0))
  {
    throw ConfigError("--tol", "must lie in (0, 1)");
  }
  if (args.kmax < 2)
  {
    throw ConfigError("--kmax", "must be >= 2");
  }
  MomentBasis basis;
  try
  {
    basis = moment_basis_from_string(args.basis);
  }
  catch (const InvalidParameter &)
  {
    throw ConfigError("--basis", "expected monomial or chebyshev");
  }
  std::vector<double> eigs(static_cast<std::size_t>(args.count));
  for (Index i = 0; i < args.count; i++)
  {
    eigs[static_cast<std::size_t>(i)] =
        args.count == 1 ? args.lo
                        : args.lo + (args.hi - args.lo) * static_cast<double>(i) /
                                        static_cast<double>(args.count - 1);
  }
  const auto rows = vandermonde_rank_experiment(eigs, args.kmax, args.tol, basis);
  Index max_rank = 0;
  for (const auto &r : rows)
  {
    max_rank = std::max(max_rank, r.rank);
  }
  log << "rank experiment (" << args.basis << "): max rank " << max_rank << " over K' <= "
      << args.kmax << "\n";
  if (args.output.empty())
  {
    write_rank_csv(out, rows);
    return;
  }
  std::ofstream file(args.output);
  if (!file)
  {
    throw ConfigError("--output", "cannot write " + args.output);
  }
  write_rank_csv(file, rows);
}

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &log)
{
  CLI::App app{"Resolvent sampling Rayleigh-Ritz eigensolver for nonlinear eigenvalue problems",
               "rsrr"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Cap on parallel workers (default: RSRR_NUM_THREADS or all cores)")
      ->check(CLI::NonNegativeNumber);
  app.set_version_flag("--version", std::string(RSRR_VERSION));

  std::string config_path;
  auto *solve = app.add_subcommand("solve", "Run RSRR on a JSON config");
  solve->add_option("config", config_path, "Config file")->required();
  auto *compare = app.add_subcommand("compare", "Run RSRR and SSRR on one config");
  compare->add_option("config", config_path, "Config file")->required();

  RankExperimentArgs rank;
  auto *rank_cmd = app.add_subcommand("rank-experiment", "Numerical rank of the Vandermonde matrix versus K'");
  rank_cmd->add_option("--eigs-lo", rank.lo, "Smallest eigenvalue")->capture_default_str();
  rank_cmd->add_option("--eigs-hi", rank.hi, "Largest eigenvalue")->capture_default_str();
  rank_cmd->add_option("--count", rank.count, "Number of equispaced eigenvalues")->capture_default_str();
  rank_cmd->add_option("--tol", rank.tol, "Relative rank threshold")->capture_default_str();
  rank_cmd->add_option("--kmax", rank.kmax, "Largest K'")->capture_default_str();
  rank_cmd->add_option("--basis", rank.basis, "monomial or chebyshev")->capture_default_str();
  rank_cmd->add_option("--output", rank.output, "CSV path (default stdout)");

  std::string bench_name, data_dir, report_path;
  bool bench_compare = false;
  auto *bench = app.add_subcommand("bench", "Run a built-in benchmark preset");
  bench->add_option("name", bench_name, "acoustic1d, string, gun or linear-oracle")->required();
  bench->add_option("--data-dir", data_dir, "Directory with gun_{K,M,W1,W2}.mtx");
  bench->add_option("--report", report_path, "Write the JSON report here");
  bench->add_flag("--compare", bench_compare, "Also run SSRR with K' = N");

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    std::ostringstream msg, err;
    const int code = app.exit(e, msg, err);
    out << msg.str();
    log << err.str();
    return code == 0 ? EXIT_OK : EXIT_CONFIG;
  }
  if (threads > 0)
  {
    set_thread_limit(static_cast<std::size_t>(threads));
  }

  try
  {
    if (solve->parsed())
    {
      cmd_solve(load_config(config_path), out, log);
    }
    else if (compare->parsed())
    {
      cmd_compare(load_config(config_path), out, log);
    }
    else if (rank_cmd->parsed())
    {
      cmd_rank_experiment(rank, out, log);
    }
    else if (bench->parsed())
    {
      RunConfig cfg = make_preset(bench_name, data_dir);
      cfg.output.report = report_path;
      // Summary on stdout; the JSON report only goes to --report.
      std::ostringstream sink;
      if (bench_compare)
      {
        cmd_compare(cfg, sink, out);
      }
      else
      {
        cmd_solve(cfg, sink, out);
      }
    }
    return EXIT_OK;
  }
  catch (const ConfigError &e)
  {
    log << "config error: " << e.what() << "\n";
    return EXIT_CONFIG;
  }
  catch (const ResidualFailure &e)
  {
    log << "error: " << e.what() << "\n";
    return EXIT_SOLVER;
  }
  catch (const std::exception &e)
  {
    log << "error: " << e.what() << "\n";
    return EXIT_SOLVER;
  }
}

}  // namespace rsrr::app
