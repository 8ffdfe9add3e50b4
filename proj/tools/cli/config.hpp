// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "rsrr/nep_problem.hpp"
#include "rsrr/problems.hpp"
#include "rsrr/rsrr.hpp"

namespace rsrr::app
{

using json = nlohmann::json;

// Invalid run configuration. what() is "<field path>: <message>".
class ConfigError : public std::runtime_error
{
public:
  ConfigError(const std::string &path, const std::string &message)
    : std::runtime_error(path + ": " + message), path_(path)
  {
  }

  const std::string &path() const { return path_; }

private:
  std::string path_;
};

struct Acoustic1dSpec
{
  Index n = 1000;
  Complex zeta{1.0, 0.0};
};

struct StringSpec
{
  Index n = 5000;
  problems::StringEnd end = problems::StringEnd::Nlevp;
};

struct LinearOracleSpec
{
  Index n = 50;
  Index inside = 12;
  std::uint64_t seed = 7;
};

struct GunSpec
{
  std::string data_dir;  // holds gun_K.mtx, gun_M.mtx, gun_W1.mtx, gun_W2.mtx
  double sigma1 = 0.0;
  double sigma2 = 108.8774;
};

struct BiotSpec
{
  std::string M, K_v, K_s;  // Matrix Market paths
  double G_inf = 3.441e5;
  std::vector<double> a{2.06, 67.1985, 506.9457};
  std::vector<double> b{193.39, 16345.0, 485918.4};
  bool leading_one = false;
};

struct SumTermSpec
{
  std::string matrix;  // Matrix Market path
  ScalarFunction f;
};

struct SumSpec
{
  std::vector<SumTermSpec> terms;
};

using ProblemSpec =
    std::variant<Acoustic1dSpec, StringSpec, LinearOracleSpec, GunSpec, BiotSpec, SumSpec>;

struct OutputSpec
{
  std::string report;        // JSON report path; empty = stdout
  std::string csv;           // eigenvalue table
  std::string eigenvectors;  // Matrix Market array file
};

struct CompareSpec
{
  std::vector<Index> k_prime_sweep;  // extra SSRR runs, one per K'
};

struct RunConfig
{
  ProblemSpec problem = Acoustic1dSpec{};
  RsrrConfig rsrr;
  OutputSpec output;
  CompareSpec compare;
  // Directory that relative paths in the config resolve against.
  std::filesystem::path base_dir = ".";
};

/// Validates every field; unknown keys are rejected. Throws ConfigError.
RunConfig parse_config(const json &doc, const std::filesystem::path &base_dir = ".");
RunConfig load_config(const std::filesystem::path &path);

json to_json(const RunConfig &config);
json contour_to_json(const Contour &contour);

std::string problem_type(const ProblemSpec &spec);

/// Builds the problem. Missing or unreadable data files raise ConfigError naming the field.
std::unique_ptr<NepProblem> make_problem(const RunConfig &config);

/// Environment variable consulted when a gun config omits data_dir.
inline constexpr const char *GUN_DATA_ENV = "RSRR_GUN_DATA";

}  // namespace rsrr::app
