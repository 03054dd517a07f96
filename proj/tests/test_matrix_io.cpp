#include <doctest.h>

#include <sstream>

#include "fghs/matrix_io.hpp"
#include "oracles.hpp"

using namespace fghs;

TEST_CASE("symmetric matrix text round-trips exactly") {
  RngStream rng(4, 0);
  const SymMatrix m = SymMatrix::from_upper(oracle::random_symmetric(rng, 5));
  std::stringstream ss;
  write_sym_matrix(ss, m);
  const SymMatrix back = read_sym_matrix(ss);
  CHECK(back.dense() == m.dense());
}

TEST_CASE("symmetric matrix text layout") {
  std::stringstream ss;
  write_sym_matrix(ss, SymMatrix::identity(2));
  CHECK(ss.str() == "2\n1 0\n0 1\n");
}

TEST_CASE("loader validates symmetry and shape") {
  std::istringstream asym("2\n1 0.5\n0.4 1\n");
  CHECK_THROWS_AS(read_sym_matrix(asym), FormatError);
  std::istringstream near("2\n1 0.5\n0.5000000000001 1\n");
  CHECK(read_sym_matrix(near)(1, 0) == 0.5);
  std::istringstream truncated("3\n1 0 0\n0 1 0\n");
  CHECK_THROWS_AS(read_sym_matrix(truncated), FormatError);
  std::istringstream bad_header("x\n");
  CHECK_THROWS_AS(read_sym_matrix(bad_header), FormatError);
}

TEST_CASE("data matrix text round-trips exactly") {
  RngStream rng(8, 0);
  Matrix y(4, 3);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 3; ++j) y(i, j) = rng.normal();
  std::stringstream ss;
  write_data_matrix(ss, y);
  CHECK(read_data_matrix(ss) == y);
}
