// SPDX-License-Identifier: Apache-2.0

#include "rsrr/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "rsrr/errors.hpp"

namespace rsrr::mm
{

namespace
{

enum class Field
{
  Real,
  Complex,
};

enum class Symmetry
{
  General,
  Symmetric,
  Hermitian,
  Skew,
};

std::string lower(std::string s)
{
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

class LineReader
{
public:
  explicit LineReader(std::istream &in) : in_(in) {}

  // Next non-comment, non-blank line. False at end of input.
  bool next(std::string &line)
  {
    while (std::getline(in_, line))
    {
      line_no_++;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '%')
      {
        continue;
      }
      return true;
    }
    return false;
  }

  bool raw(std::string &line)
  {
    if (!std::getline(in_, line))
    {
      return false;
    }
    line_no_++;
    return true;
  }

  std::size_t line_no() const { return line_no_; }

private:
  std::istream &in_;
  std::size_t line_no_ = 0;
};

Complex read_value(std::istringstream &is, Field field, std::size_t line)
{
  double re = 0.0, im = 0.0;
  if (!(is >> re))
  {
    throw ParseError("expected a numeric value", line);
  }
  if (field == Field::Complex && !(is >> im))
  {
    throw ParseError("expected the imaginary part of a complex value", line);
  }
  return {re, im};
}

struct Entries
{
  Index rows = 0;
  Index cols = 0;
  std::vector<Eigen::Triplet<Complex>> values;  // in file order, symmetry expanded
};

void place(Entries &A, Index i, Index j, Complex v, Symmetry sym)
{
  A.values.emplace_back(i, j, v);
  if (i == j)
  {
    return;
  }
  switch (sym)
  {
    case Symmetry::General:
      break;
    case Symmetry::Symmetric:
      A.values.emplace_back(j, i, v);
      break;
    case Symmetry::Hermitian:
      A.values.emplace_back(j, i, std::conj(v));
      break;
    case Symmetry::Skew:
      A.values.emplace_back(j, i, -v);
      break;
  }
}

Entries parse(std::istream &in)
{
  LineReader reader(in);
  std::string line;
  if (!reader.raw(line))
  {
    throw ParseError("empty input", 1);
  }
  std::istringstream header(line);
  std::string banner, object, format, field_s, symmetry_s;
  header >> banner >> object >> format >> field_s >> symmetry_s;
  if (banner != "%%MatrixMarket")
  {
    throw ParseError("missing %%MatrixMarket banner", reader.line_no());
  }
  object = lower(object);
  format = lower(format);
  field_s = lower(field_s);
  symmetry_s = lower(symmetry_s);
  if (object != "matrix")
  {
    throw ParseError("unsupported object '" + object + "'", reader.line_no());
  }
  Layout layout;
  if (format == "coordinate")
  {
    layout = Layout::Coordinate;
  }
  else if (format == "array")
  {
    layout = Layout::Array;
  }
  else
  {
    throw ParseError("unknown format '" + format + "'", reader.line_no());
  }
  Field field;
  if (field_s == "real" || field_s == "integer" || field_s == "double")
  {
    field = Field::Real;
  }
  else if (field_s == "complex")
  {
    field = Field::Complex;
  }
  else if (field_s == "pattern")
  {
    throw UnsupportedField("pattern matrices carry no values");
  }
  else
  {
    throw ParseError("unknown field '" + field_s + "'", reader.line_no());
  }
  Symmetry sym;
  if (symmetry_s == "general")
  {
    sym = Symmetry::General;
  }
  else if (symmetry_s == "symmetric")
  {
    sym = Symmetry::Symmetric;
  }
  else if (symmetry_s == "hermitian")
  {
    sym = Symmetry::Hermitian;
  }
  else if (symmetry_s == "skew-symmetric")
  {
    sym = Symmetry::Skew;
  }
  else
  {
    throw ParseError("unknown symmetry '" + symmetry_s + "'", reader.line_no());
  }

  if (!reader.next(line))
  {
    throw ParseError("missing size line", reader.line_no() + 1);
  }
  std::istringstream size_line(line);
  long long rows = 0, cols = 0, nnz = 0;
  if (!(size_line >> rows >> cols) || (layout == Layout::Coordinate && !(size_line >> nnz)))
  {
    throw ParseError("malformed size line", reader.line_no());
  }
  if (rows < 1 || cols < 1 || nnz < 0)
  {
    throw ParseError("matrix dimensions must be positive", reader.line_no());
  }
  if (sym != Symmetry::General && rows != cols)
  {
    throw ParseError("symmetric storage requires a square matrix", reader.line_no());
  }

  Entries A;
  A.rows = rows;
  A.cols = cols;
  if (layout == Layout::Coordinate)
  {
    for (long long k = 0; k < nnz; k++)
    {
      if (!reader.next(line))
      {
        throw ParseError("expected " + std::to_string(nnz) + " entries, found " + std::to_string(k),
                         reader.line_no() + 1);
      }
      std::istringstream is(line);
      long long i = 0, j = 0;
      if (!(is >> i >> j))
      {
        throw ParseError("malformed entry indices", reader.line_no());
      }
      if (i < 1 || i > rows || j < 1 || j > cols)
      {
        throw ParseError("entry index out of range", reader.line_no());
      }
      if (sym != Symmetry::General && j > i)
      {
        throw ParseError("symmetric storage lists the upper triangle", reader.line_no());
      }
      place(A, i - 1, j - 1, read_value(is, field, reader.line_no()), sym);
    }
  }
  else
  {
    for (long long j = 0; j < cols; j++)
    {
      const long long i0 = sym == Symmetry::General ? 0 : (sym == Symmetry::Skew ? j + 1 : j);
      for (long long i = i0; i < rows; i++)
      {
        if (!reader.next(line))
        {
          throw ParseError("array data ended early", reader.line_no() + 1);
        }
        std::istringstream is(line);
        place(A, i, j, read_value(is, field, reader.line_no()), sym);
      }
    }
  }
  return A;
}

std::ifstream open(const std::filesystem::path &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw Error("cannot open Matrix Market file " + path.string());
  }
  return in;
}

}  // namespace

ComplexMatrix read(std::istream &in)
{
  const Entries e = parse(in);
  ComplexMatrix A = ComplexMatrix::Zero(e.rows, e.cols);
  for (const auto &t : e.values)
  {
    A(t.row(), t.col()) = t.value();
  }
  return A;
}

Eigen::SparseMatrix<Complex> read_sparse(std::istream &in)
{
  const Entries e = parse(in);
  Eigen::SparseMatrix<Complex> A(e.rows, e.cols);
  // Repeated coordinates keep the last value, matching the dense reader.
  A.setFromTriplets(e.values.begin(), e.values.end(),
                    [](const Complex &, const Complex &b) { return b; });
  A.prune(Complex(0.0));
  return A;
}

ComplexMatrix load_matrix_market(const std::filesystem::path &path)
{
  auto in = open(path);
  return read(in);
}

Eigen::SparseMatrix<Complex> load_matrix_market_sparse(const std::filesystem::path &path)
{
  auto in = open(path);
  return read_sparse(in);
}

void write(std::ostream &out, const ComplexMatrix &A, Layout layout)
{
  const bool real = (A.array().imag() == 0.0).all();
  out << "%%MatrixMarket matrix " << (layout == Layout::Array ? "array" : "coordinate") << ' '
      << (real ? "real" : "complex") << " general\n";
  char buf[96];
  auto value = [&](Complex v)
  {
    if (real)
    {
      std::snprintf(buf, sizeof(buf), "%.17g", v.real());
    }
    else
    {
      std::snprintf(buf, sizeof(buf), "%.17g %.17g", v.real(), v.imag());
    }
    return buf;
  };
  if (layout == Layout::Array)
  {
    out << A.rows() << ' ' << A.cols() << '\n';
    for (Index j = 0; j < A.cols(); j++)
    {
      for (Index i = 0; i < A.rows(); i++)
      {
        out << value(A(i, j)) << '\n';
      }
    }
    return;
  }
  Index nnz = 0;
  for (Index j = 0; j < A.cols(); j++)
  {
    for (Index i = 0; i < A.rows(); i++)
    {
      nnz += A(i, j) != 0.0;
    }
  }
  out << A.rows() << ' ' << A.cols() << ' ' << nnz << '\n';
  for (Index j = 0; j < A.cols(); j++)
  {
    for (Index i = 0; i < A.rows(); i++)
    {
      if (A(i, j) != 0.0)
      {
        out << i + 1 << ' ' << j + 1 << ' ' << value(A(i, j)) << '\n';
      }
    }
  }
}

void write_matrix_market(const std::filesystem::path &path, const ComplexMatrix &A, Layout layout)
{
  std::ofstream out(path);
  if (!out)
  {
    throw Error("cannot write Matrix Market file " + path.string());
  }
  write(out, A, layout);
}

}  // namespace rsrr::mm
