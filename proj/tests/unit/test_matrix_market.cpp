// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <sstream>

#include "rsrr/errors.hpp"
#include "rsrr/matrix_market.hpp"
#include "support/helpers.hpp"

using namespace rsrr;

namespace
{

ComplexMatrix parse(const std::string &text)
{
  std::istringstream in(text);
  return mm::read(in);
}

}  // namespace

TEST_CASE("coordinate real file")
{
  const ComplexMatrix A = parse("%%MatrixMarket matrix coordinate real general\n"
                                "% comment\n"
                                "2 2 2\n"
                                "1 1 1.0\n"
                                "2 2 2.0\n");
  CHECK(A.rows() == 2);
  CHECK(A(0, 0) == Complex(1.0));
  CHECK(A(1, 1) == Complex(2.0));
  CHECK(A(0, 1) == Complex(0.0));
}

TEST_CASE("symmetric storage is expanded")
{
  const ComplexMatrix A = parse("%%MatrixMarket matrix coordinate real symmetric\n"
                                "3 3 4\n"
                                "1 1 4\n"
                                "2 1 -1\n"
                                "3 2 -2\n"
                                "3 3 5\n");
  CHECK(A(0, 1) == Complex(-1.0));
  CHECK(A(1, 0) == Complex(-1.0));
  CHECK(A(1, 2) == Complex(-2.0));
  CHECK((A - A.transpose()).norm() == 0.0);
}

TEST_CASE("hermitian and skew-symmetric storage")
{
  const ComplexMatrix H = parse("%%MatrixMarket matrix coordinate complex hermitian\n"
                                "2 2 2\n"
                                "1 1 1 0\n"
                                "2 1 3 4\n");
  CHECK(H(1, 0) == Complex(3.0, 4.0));
  CHECK(H(0, 1) == Complex(3.0, -4.0));
  const ComplexMatrix S = parse("%%MatrixMarket matrix array real skew-symmetric\n"
                                "3 3\n"
                                "1\n2\n3\n");
  CHECK(S(1, 0) == Complex(1.0));
  CHECK(S(0, 1) == Complex(-1.0));
  CHECK(S(2, 1) == Complex(3.0));
  CHECK(S(0, 0) == Complex(0.0));
}

TEST_CASE("array complex general")
{
  const ComplexMatrix A = parse("%%MatrixMarket matrix array complex general\n"
                                "2 1\n"
                                "1.5 -2\n"
                                "0 1e-3\n");
  CHECK(A(0, 0) == Complex(1.5, -2.0));
  CHECK(A(1, 0) == Complex(0.0, 1e-3));
}

TEST_CASE("errors carry line numbers")
{
  CHECK_THROWS_AS(parse("%%MatrixMarket matrix coordinate pattern general\n2 2 1\n1 1\n"),
                  UnsupportedField);
  try
  {
    parse("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1.0\n3 1 1.0\n");
    FAIL("expected ParseError");
  }
  catch (const ParseError &e)
  {
    CHECK(e.line() == 4);
  }
  try
  {
    parse("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 x\n");
    FAIL("expected ParseError");
  }
  catch (const ParseError &e)
  {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse("not a banner\n"), ParseError);
  CHECK_THROWS_AS(parse("%%MatrixMarket matrix coordinate real general\n2 2 3\n1 1 1\n"),
                  ParseError);
}

TEST_CASE("write then read is exact")
{
  const ComplexMatrix A = test::random_matrix(7, 5, 1);
  for (auto layout : {mm::Layout::Array, mm::Layout::Coordinate})
  {
    std::stringstream io;
    mm::write(io, A, layout);
    CHECK((mm::read(io) - A).norm() == 0.0);
  }
  ComplexMatrix R = test::random_matrix(4, 4, 2).real().cast<Complex>();
  R(1, 2) = 0.0;
  std::stringstream io;
  mm::write(io, R);
  CHECK(io.str().find("real general") != std::string::npos);
  CHECK((mm::read(io) - R).norm() == 0.0);
}

TEST_CASE("sparse reader agrees with the dense reader")
{
  const std::string text = "%%MatrixMarket matrix coordinate real symmetric\n"
                           "3 3 3\n"
                           "1 1 2\n"
                           "3 1 -1\n"
                           "2 2 0\n";
  std::istringstream in(text);
  const auto S = mm::read_sparse(in);
  CHECK(S.nonZeros() == 3);
  CHECK((ComplexMatrix(S) - parse(text)).norm() == 0.0);
}
