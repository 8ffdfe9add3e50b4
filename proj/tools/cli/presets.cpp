// SPDX-License-Identifier: Apache-2.0

#include "cli/presets.hpp"

#include <cstdlib>

namespace rsrr::app
{

std::vector<std::string> preset_names()
{
  return {"acoustic1d", "string", "gun", "linear-oracle"};
}

RunConfig make_preset(const std::string &name, const std::string &data_dir)
{
  RunConfig cfg;
  RsrrConfig &c = cfg.rsrr;
  if (name == "acoustic1d")
  {
    cfg.problem = Acoustic1dSpec{1000, {1.0, 0.0}};
    c.contour = Contour::ellipse({9.9, 0.8}, 10.1, 1.01);
    c.L = 2;
    c.N = 100;
    c.K_prime = 100;
    c.N_S = 1000;
    c.K = 2;
  }
  else if (name == "string")
  {
    cfg.problem = StringSpec{5000, problems::StringEnd::Nlevp};
    c.contour = Contour::ellipse({5001.5, 0.0}, 4998.5, 249.925);
    c.L = 1;
    c.N = 100;
    c.K_prime = 100;
    c.N_S = 1000;
    c.K = 8;
  }
  else if (name == "gun")
  {
    std::string dir = data_dir;
    if (dir.empty())
    {
      const char *env = std::getenv(GUN_DATA_ENV);
      dir = env ? env : "";
    }
    if (dir.empty())
    {
      throw ConfigError("--data-dir", "the gun preset needs the NLEVP gun matrices in Matrix Market form");
    }
    cfg.problem = GunSpec{dir, 0.0, 108.8774};
    // "12-6" layout, N = 36.
    c.contour = Contour::rectangle({140.0, 0.0}, {335.4, 50.0}, 12, 6);
    c.L = 4;
    c.N = 36;
    c.N_S = 1080;
    c.K = 2;
  }
  else if (name == "linear-oracle")
  {
    cfg.problem = LinearOracleSpec{50, 12, 7};
    c.contour = Contour::ellipse({0.0, 0.0}, 1.0, 1.0);
    c.L = 2;
    c.N = 32;
    c.N_S = 128;
    c.K = 4;
  }
  else
  {
    throw ConfigError("bench", "unknown preset '" + name +
                                   "' (expected acoustic1d, string, gun or linear-oracle)");
  }
  return cfg;
}

}  // namespace rsrr::app
