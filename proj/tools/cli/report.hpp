// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cli/config.hpp"

namespace rsrr::app
{

inline constexpr int REPORT_SCHEMA_VERSION = 1;

json solution_to_json(const EigenSolution &solution);

/// Top-level report. `runs` holds one entry per scheme that was run.
json make_report(const std::string &command, const RunConfig &config, const NepProblem &problem,
                 const std::vector<json> &runs, const std::optional<json> &comparison = {});

/// Comparison block for `compare`: residuals matched by nearest eigenvalue, ranks of the two
/// source matrices at the truncation threshold, and optional K' sweep rows.
json comparison_to_json(const EigenSolution &rsrr, const std::optional<EigenSolution> &ssrr,
                        const std::vector<EigenSolution> &sweep, const std::vector<Index> &sweep_k);

/// Copy of a report with every "timings" member removed.
json strip_timings(json report);

/// Writes to `path`, or to `fallback` when path is empty.
void write_json(const std::string &path, const json &doc, std::ostream &fallback);

/// Columns: index, re, im, residual, reduced_residual.
void write_eigenvalue_csv(std::ostream &out, const EigenSolution &solution);

/// Eigenvectors as one n x m Matrix Market array file.
void write_eigenvectors(const std::string &path, const EigenSolution &solution);

double median(std::vector<double> values);

}  // namespace rsrr::app
