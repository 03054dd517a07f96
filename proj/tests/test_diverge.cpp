#include <doctest.h>

#include <cmath>
#include <vector>

#include "fghs/diverge.hpp"
#include "oracles.hpp"

using namespace fghs;

namespace {

PrecisionMatrix diag2(double a, double b) {
  Vector d(2);
  d << a, b;
  return PrecisionMatrix(SymMatrix::diagonal(d), DiagMode::Free);
}

// D_α between N(0, 1/w1) and N(0, 1/w2) from the defining integral.
double renyi_1d_quadrature(double w1, double w2, double alpha) {
  auto pdf = [](double x, double w) { return std::sqrt(w / (2 * M_PI)) * std::exp(-0.5 * w * x * x); };
  const double sd = 1.0 / std::sqrt(std::min(w1, w2));
  const double integral = oracle::integrate_panels(
      [&](double x) { return std::pow(pdf(x, w1), alpha) * std::pow(pdf(x, w2), 1 - alpha); },
      -40 * sd, 40 * sd, 64);
  return std::log(integral) / (alpha - 1.0);
}

}  // namespace

TEST_CASE("kl_gaussian examples") {
  RngStream rng(1, 0);
  const auto w = oracle::free_precision(oracle::random_spd(rng, 4, 0.5, 3.0));
  CHECK(kl_gaussian(w, w) == doctest::Approx(0.0));
  CHECK(kl_gaussian(diag2(1, 1), diag2(2, 2)) == doctest::Approx(1.0 - std::log(2.0)));
  CHECK_THROWS_AS(kl_gaussian(diag2(1, 1), oracle::free_precision(Matrix::Identity(3, 3))),
                  DimensionMismatch);
  CHECK_THROWS_AS(kl_gaussian(diag2(1, -1), diag2(1, 1)), NotPositiveDefinite);
}

TEST_CASE("kl_variance_gaussian examples") {
  CHECK(kl_variance_gaussian(diag2(3, 1), diag2(3, 1)) == doctest::Approx(0.0));
  CHECK(kl_variance_gaussian(diag2(1, 1), diag2(2, 2)) == doctest::Approx(1.0));
}

TEST_CASE("KL is non-negative and vanishes only at equality") {
  RngStream rng(2, 0);
  for (int t = 0; t < 50; ++t) {
    const auto a = oracle::free_precision(oracle::random_spd(rng, 5, 0.2, 5.0));
    const auto b = oracle::free_precision(oracle::random_spd(rng, 5, 0.2, 5.0));
    CHECK(kl_gaussian(a, b) > 1e-10);
    CHECK(kl_gaussian(a, a) < 1e-10);
  }
}

TEST_CASE("renyi closed form matches 1-D quadrature of the defining integral") {
  // Embedded as diag(w, 1): the shared unit coordinate contributes nothing.
  CHECK(std::abs(renyi_gaussian(diag2(1, 1), diag2(4, 1), 0.5) - renyi_1d_quadrature(1, 4, 0.5)) < 1e-8);
  CHECK(renyi_gaussian(diag2(1, 1), diag2(4, 1), 0.5) > 0.0);
  CHECK(renyi_gaussian(diag2(2, 1), diag2(2, 1), 0.3) == doctest::Approx(0.0));
  CHECK_THROWS_AS(renyi_gaussian(diag2(1, 1), diag2(4, 1), 1.0), ParameterDomain);
}

TEST_CASE("renyi approaches KL as alpha -> 1") {
  RngStream rng(3, 0);
  for (int t = 0; t < 20; ++t) {
    const auto a = oracle::free_precision(oracle::random_spd(rng, 4, 0.3, 4.0));
    const auto b = oracle::free_precision(oracle::random_spd(rng, 4, 0.3, 4.0));
    const double kl = kl_gaussian(a, b);
    CHECK(std::abs(renyi_gaussian(a, b, 0.999) - kl) < 0.01 * kl);
  }
}

TEST_CASE("hellinger examples") {
  CHECK(hellinger_sq_gaussian(diag2(2, 3), diag2(2, 3)) == doctest::Approx(0.0));
  const double closed = 1.0 - std::pow(1.0 * 0.25, 0.25) / std::sqrt(1.25 / 2.0);
  // diag(1, 1) vs diag(4, 1): Σ = 1 vs 0.25 on the first coordinate.
  const double got = hellinger_sq_gaussian(diag2(1, 1), diag2(4, 1));
  CHECK(got == doctest::Approx(closed).epsilon(1e-12));
  auto pdf = [](double x, double w) { return std::sqrt(w / (2 * M_PI)) * std::exp(-0.5 * w * x * x); };
  const double quad = 0.5 * oracle::integrate_panels(
                                [&](double x) {
                                  const double d = std::sqrt(pdf(x, 1)) - std::sqrt(pdf(x, 4));
                                  return d * d;
                                },
                                -40, 40, 64);
  CHECK(std::abs(got - quad) < 1e-9);
}

TEST_CASE("hellinger is dominated by D_1/2") {
  RngStream rng(4, 0);
  for (int t = 0; t < 100; ++t) {
    const auto a = oracle::free_precision(oracle::random_spd(rng, 4, 0.1, 6.0));
    const auto b = oracle::free_precision(oracle::random_spd(rng, 4, 0.1, 6.0));
    const double h2 = hellinger_sq_gaussian(a, b);
    CHECK(h2 >= 0.0);
    CHECK(h2 <= 1.0);
    CHECK(h2 <= renyi_gaussian(a, b, 0.5) + 1e-12);
  }
}

TEST_CASE("Frobenius distance over Hellinger is bounded inside a spectral band") {
  // Band [1/4, 4]. The constant is recorded from one batch of pairs and
  // must hold, with 50% headroom, on a fresh batch.
  auto max_ratio = [](std::uint64_t seed) {
    RngStream rng(seed, 0);
    double worst = 0.0;
    for (int t = 0; t < 300; ++t) {
      const auto a = oracle::free_precision(oracle::random_spd(rng, 4, 0.25, 4.0));
      const auto b = oracle::free_precision(oracle::random_spd(rng, 4, 0.25, 4.0));
      worst = std::max(worst, frobenius_dist_sq(a.mat(), b.mat()) / hellinger_sq_gaussian(a, b));
    }
    return worst;
  };
  const double c0 = max_ratio(100);
  MESSAGE("recorded c0 = " << c0);
  CHECK(std::isfinite(c0));
  CHECK(max_ratio(200) <= 1.5 * c0);
}

TEST_CASE("c_alpha") {
  CHECK(c_alpha(0.7) == 1.0);
  CHECK(c_alpha(0.25) == doctest::Approx(3.0));
  CHECK(c_alpha(0.5) == 1.0);
  CHECK_THROWS_AS(c_alpha(0.0), ParameterDomain);
  CHECK_THROWS_AS(c_alpha(1.0), ParameterDomain);
}

TEST_CASE("divergence report fields") {
  const auto r = divergence_report(diag2(1, 1), diag2(2, 2), 0.5);
  CHECK(r.kl == doctest::Approx(1.0 - std::log(2.0)));
  CHECK(r.frobenius_sq == doctest::Approx(2.0));
  CHECK(r.hellinger_sq <= r.renyi_alpha);
  CHECK(r.alpha == 0.5);
}

TEST_CASE("covariance adapter") {
  Vector d(2);
  d << 2.0, 4.0;
  const auto w = precision_from_covariance(SymMatrix::diagonal(d));
  CHECK(w.mat()(0, 0) == doctest::Approx(0.5));
  CHECK(w.mat()(1, 1) == doctest::Approx(0.25));
}
