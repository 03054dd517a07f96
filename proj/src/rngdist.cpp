#include "fghs/rngdist.hpp"

#include <cmath>
#include <numbers>

namespace fghs {

namespace {

std::seed_seq make_seed_seq(std::uint64_t seed, std::uint64_t stream_id) {
  return std::seed_seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                       static_cast<std::uint32_t>(stream_id),
                       static_cast<std::uint32_t>(stream_id >> 32)};
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  auto seq = make_seed_seq(seed, stream_id);
  engine_.seed(seq);
}

double RngStream::uniform() {
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t RngStream::uniform_below(std::uint64_t n) {
  // Rejection on the top of the range keeps the result exactly uniform.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

double RngStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

double RngStream::gamma(double shape, double rate) {
  if (!(shape > 0.0) || !(rate > 0.0) || !std::isfinite(shape) || !std::isfinite(rate))
    throw ParameterDomain("gamma: shape and rate must be positive and finite");
  if (shape < 1.0) {
    // G(a) = G(a + 1) * U^(1/a)
    const double g = gamma(shape + 1.0, 1.0);
    return g * std::pow(uniform(), 1.0 / shape) / rate;
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v / rate;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v / rate;
  }
}

double draw_inverse_gamma(RngStream& rng, double shape, double scale) {
  if (!(shape > 0.0) || !(scale > 0.0) || !std::isfinite(scale))
    throw ParameterDomain("draw_inverse_gamma: shape and scale must be positive");
  return scale / rng.gamma(shape, 1.0);
}

double draw_half_cauchy(RngStream& rng) {
  return std::abs(std::tan(0.5 * std::numbers::pi * rng.uniform()));
}

double draw_half_cauchy_sq_mixture(RngStream& rng) {
  const double nu = draw_inverse_gamma(rng, 0.5, 1.0);
  return draw_inverse_gamma(rng, 0.5, 1.0 / nu);
}

Vector draw_mvn_from_precision_factor(RngStream& rng, const Matrix& precision_lower) {
  Vector x(precision_lower.rows());
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = rng.normal();
  precision_lower.transpose().triangularView<Eigen::Upper>().solveInPlace(x);
  return x;
}

Vector draw_mvn_from_precision(RngStream& rng, const PrecisionMatrix& omega) {
  return draw_mvn_from_precision_factor(rng, cholesky(omega.mat()));
}

namespace {

double draw_mvt_mixing(RngStream& rng, double df) {
  if (!(df > 0.0)) throw ParameterDomain("draw_mvt: df must be positive");
  return rng.gamma(0.5 * df, 0.5 * df);
}

}  // namespace

Vector draw_mvt(RngStream& rng, const SymMatrix& scale_matrix, double df) {
  if (!(df > 0.0)) throw ParameterDomain("draw_mvt: df must be positive");
  const Matrix l = cholesky(scale_matrix);
  Vector z(l.rows());
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = rng.normal();
  const Vector g = l * z;
  return g / std::sqrt(draw_mvt_mixing(rng, df));
}

Vector draw_mvt_from_precision_factor(RngStream& rng, const Matrix& precision_lower, double df) {
  if (!(df > 0.0)) throw ParameterDomain("draw_mvt: df must be positive");
  const Vector g = draw_mvn_from_precision_factor(rng, precision_lower);
  return g / std::sqrt(draw_mvt_mixing(rng, df));
}

}  // namespace fghs
