#include <doctest.h>

#include <cmath>

#include "fghs/matcore.hpp"
#include "oracles.hpp"

using namespace fghs;

TEST_CASE("SymMatrix mirrors the upper triangle") {
  Matrix m(3, 3);
  m << 1, 2, 3, 9, 4, 5, 9, 9, 6;
  const SymMatrix s = SymMatrix::from_upper(m);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(s(i, j) == s(j, i));
  CHECK(s(1, 0) == 2);
  CHECK(s(2, 1) == 5);

  SymMatrix t = SymMatrix::zeros(3);
  t.set(0, 2, 7.5);
  CHECK(t(2, 0) == 7.5);
  CHECK_THROWS_AS(SymMatrix::from_full_checked(m, 1e-9), FormatError);
}

TEST_CASE("PrecisionMatrix FixedUnit requires a unit diagonal") {
  CHECK_NOTHROW(PrecisionMatrix(SymMatrix::identity(3), DiagMode::FixedUnit));
  CHECK_THROWS_AS(PrecisionMatrix(SymMatrix::diagonal(Vector::Constant(3, 2.0)), DiagMode::FixedUnit),
                  ParameterDomain);
}

TEST_CASE("cholesky examples") {
  CHECK(cholesky(SymMatrix::identity(3)).isApprox(Matrix::Identity(3, 3)));

  Matrix a(2, 2);
  a << 4, 2, 2, 3;
  const Matrix l = cholesky(SymMatrix::from_upper(a));
  CHECK(l(0, 0) == doctest::Approx(2.0));
  CHECK(l(0, 1) == 0.0);
  CHECK(l(1, 0) == doctest::Approx(1.0));
  CHECK(l(1, 1) == doctest::Approx(std::sqrt(2.0)));
  // direct multiplication
  Matrix rebuilt(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      double s = 0;
      for (int k = 0; k < 2; ++k) s += l(i, k) * l(j, k);
      rebuilt(i, j) = s;
    }
  CHECK((rebuilt - a).cwiseAbs().maxCoeff() < 1e-14);

  Matrix indefinite(2, 2);
  indefinite << 1, 2, 2, 1;
  CHECK_FALSE(try_cholesky(SymMatrix::from_upper(indefinite)).has_value());
  CHECK_THROWS_AS(cholesky(SymMatrix::from_upper(indefinite)), NotPositiveDefinite);
}

TEST_CASE("cholesky rejects pivots below the relative tolerance") {
  Matrix a(2, 2);
  a << 1, 1, 1, 1 + 1e-14;  // second pivot 1e-14 < 1e-12 * 1
  CHECK_FALSE(try_cholesky(SymMatrix::from_upper(a)).has_value());
  CHECK_FALSE(try_cholesky(SymMatrix::zeros(2)).has_value());
}

TEST_CASE("cholesky round-trip on random PD matrices up to p = 200") {
  RngStream rng(11, 0);
  for (Eigen::Index p : {2, 5, 17, 64, 200}) {
    const Matrix m = oracle::random_spd(rng, p, 0.1, 10.0);
    const Matrix l = cholesky(SymMatrix::from_upper(m));
    CHECK((l * l.transpose() - m).norm() <= 1e-10 * m.norm());
  }
}

TEST_CASE("log_det examples") {
  CHECK(log_det(SymMatrix::identity(5)) == 0.0);
  CHECK(log_det(SymMatrix::diagonal(Vector::Constant(2, 2.0))) == doctest::Approx(2 * std::log(2.0)));

  RngStream rng(3, 0);
  const Matrix m = oracle::random_spd(rng, 4, 0.3, 5.0);
  const Vector ev = oracle::jacobi_eigenvalues(m);
  double expected = 0;
  for (int i = 0; i < 4; ++i) expected += std::log(ev(i));
  CHECK(std::abs(log_det(SymMatrix::from_upper(m)) - expected) < 1e-10);

  Matrix indefinite(2, 2);
  indefinite << 1, 2, 2, 1;
  CHECK_THROWS_AS(log_det(SymMatrix::from_upper(indefinite)), NotPositiveDefinite);
}

TEST_CASE("log_det(A) + log_det(A^-1) vanishes") {
  RngStream rng(5, 0);
  for (Eigen::Index p : {2, 10, 50}) {
    const SymMatrix a = SymMatrix::from_upper(oracle::random_spd(rng, p, 0.05, 20.0));
    CHECK(std::abs(log_det(a) + log_det(inverse_pd(a))) < 1e-8);
  }
}

TEST_CASE("min_eigenvalue examples") {
  CHECK(min_eigenvalue(SymMatrix::identity(3)) == doctest::Approx(1.0).epsilon(1e-12));
  Vector d(2);
  d << 0.5, 2.0;
  CHECK(min_eigenvalue(SymMatrix::diagonal(d)) == doctest::Approx(0.5).epsilon(1e-12));

  Matrix sigma = Matrix::Constant(50, 50, 0.2);
  sigma.diagonal().setOnes();
  const double got = min_eigenvalue(SymMatrix::from_upper(sigma));
  CHECK(std::abs(got - 0.8) < 1e-10 * 0.8);
  CHECK(std::abs(oracle::jacobi_eigenvalues(sigma)(0) - got) < 1e-10);
}

TEST_CASE("min_eigenvalue agrees with the Jacobi oracle on random symmetric matrices") {
  RngStream rng(9, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix m = oracle::random_symmetric(rng, 8);
    const double ref = oracle::jacobi_eigenvalues(m)(0);
    CHECK(std::abs(min_eigenvalue(SymMatrix::from_upper(m)) - ref) <= 1e-10 * std::max(1.0, std::abs(ref)));
  }
}

TEST_CASE("nearest_psd examples") {
  RngStream rng(21, 0);
  const Matrix pd = oracle::random_spd(rng, 6, 0.0, 3.0);
  const SymMatrix in = SymMatrix::from_upper(pd);
  CHECK((nearest_psd(in).dense() - in.dense()).cwiseAbs().maxCoeff() <= 1e-12);

  Vector d(2);
  d << 1.0, -1.0;
  const SymMatrix clipped = nearest_psd(SymMatrix::diagonal(d));
  CHECK(clipped(0, 0) == doctest::Approx(1.0));
  CHECK(std::abs(clipped(1, 1)) < 1e-15);
  CHECK(std::abs(clipped(0, 1)) < 1e-15);
}

TEST_CASE("nearest_psd beats 1000 random PSD probes") {
  RngStream rng(33, 0);
  const Matrix m = oracle::random_symmetric(rng, 6);
  REQUIRE(oracle::jacobi_eigenvalues(m)(0) < 0.0);
  const SymMatrix in = SymMatrix::from_upper(m);
  const SymMatrix out = nearest_psd(in);
  CHECK(min_eigenvalue(out) >= -1e-10);
  const double best = (out.dense() - m).norm();
  for (int k = 0; k < 1000; ++k) {
    Matrix g(6, 6);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) g(i, j) = rng.normal();
    // PSD probes near the projection and far from it.
    const Matrix probe = k % 2 ? Matrix(g * g.transpose()) : Matrix(out.dense() + 0.05 * g * g.transpose());
    CHECK(best <= (probe - m).norm() + 1e-12);
  }
}

TEST_CASE("nearest_psd is idempotent and non-expansive toward PSD targets") {
  RngStream rng(44, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix m = 2.0 * oracle::random_symmetric(rng, 7);
    const SymMatrix in = SymMatrix::from_upper(m);
    const SymMatrix once = nearest_psd(in);
    const SymMatrix twice = nearest_psd(once);
    CHECK((once.dense() - twice.dense()).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(min_eigenvalue(once) >= -1e-10);
    for (int k = 0; k < 10; ++k) {
      const Matrix x = oracle::random_spd(rng, 7, 0.0, 4.0);
      CHECK((once.dense() - x).norm() <= 2.0 * (m - x).norm() + 1e-12);
    }
  }
}

TEST_CASE("frobenius_dist_sq examples") {
  CHECK(frobenius_dist_sq(SymMatrix::identity(2), SymMatrix::identity(2)) == 0.0);
  CHECK(frobenius_dist_sq(SymMatrix::identity(2), SymMatrix::zeros(2)) == 2.0);
  RngStream rng(1, 0);
  const Matrix a = oracle::random_symmetric(rng, 3);
  const Matrix b = oracle::random_symmetric(rng, 3);
  CHECK(frobenius_dist_sq(SymMatrix::from_upper(a), SymMatrix::from_upper(b)) ==
        doctest::Approx(oracle::frobenius_sq_loop(a, b)).epsilon(1e-14));
  CHECK_THROWS_AS(frobenius_dist_sq(SymMatrix::identity(2), SymMatrix::identity(3)), DimensionMismatch);
}
