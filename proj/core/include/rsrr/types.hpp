// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Core>

namespace rsrr
{

using Complex = std::complex<double>;
using Index = Eigen::Index;

// Column-major throughout the library.
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

using namespace std::complex_literals;

}  // namespace rsrr
