// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>

#include <Eigen/SparseCore>

#include "rsrr/types.hpp"

namespace rsrr::mm
{

enum class Layout
{
  Array,
  Coordinate,
};

/// Reads `%%MatrixMarket matrix coordinate|array real|integer|complex
/// general|symmetric|hermitian|skew-symmetric` into a dense matrix with the symmetry
/// expanded. Pattern files throw UnsupportedField; malformed content throws ParseError
/// carrying the 1-based line number.
ComplexMatrix read(std::istream &in);
ComplexMatrix load_matrix_market(const std::filesystem::path &path);

/// Same format rules, compressed column storage; explicit zeros are dropped.
Eigen::SparseMatrix<Complex> read_sparse(std::istream &in);
Eigen::SparseMatrix<Complex> load_matrix_market_sparse(const std::filesystem::path &path);

/// Writes a general matrix. The field is `real` when every imaginary part is zero and
/// `complex` otherwise; values use 17 significant digits so a reread is exact.
void write(std::ostream &out, const ComplexMatrix &A, Layout layout = Layout::Coordinate);
void write_matrix_market(const std::filesystem::path &path, const ComplexMatrix &A,
                         Layout layout = Layout::Coordinate);

}  // namespace rsrr::mm
