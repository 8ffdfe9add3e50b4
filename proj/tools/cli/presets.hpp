// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "cli/config.hpp"

namespace rsrr::app
{

/// acoustic1d, string, gun, linear-oracle.
std::vector<std::string> preset_names();

/// Benchmark parameter rows. Throws ConfigError for unknown names or a gun preset without data.
RunConfig make_preset(const std::string &name, const std::string &data_dir = "");

}  // namespace rsrr::app
