// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>
#include <string>

#include "cli/config.hpp"

namespace rsrr::app
{

enum ExitCode
{
  EXIT_OK = 0,
  EXIT_SOLVER = 1,
  EXIT_CONFIG = 2,
};

struct RankExperimentArgs
{
  double lo = -0.9;
  double hi = 0.9;
  Index count = 50;
  double tol = 1e-12;
  Index kmax = 200;
  std::string basis = "monomial";
  std::string output;  // CSV path; empty = stdout
};

/// Each command writes machine output to `out` and a short human summary to `log`.
/// They throw ConfigError for invalid input and rsrr::Error for solver failures.
void cmd_solve(const RunConfig &config, std::ostream &out, std::ostream &log);
void cmd_compare(const RunConfig &config, std::ostream &out, std::ostream &log);
void cmd_rank_experiment(const RankExperimentArgs &args, std::ostream &out, std::ostream &log);

/// Full command line, including exit-code mapping: 0 success, 1 solver error, 2 config error.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &log);

}  // namespace rsrr::app
