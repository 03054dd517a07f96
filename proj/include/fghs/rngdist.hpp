#pragma once

// Reproducible random streams and the distributions the sampler needs.
//
// Generator: std::mt19937_64 seeded through std::seed_seq with the four
// 32-bit halves of (seed, stream_id). Both algorithms are fully specified by
// the C++ standard, and every variate below is built from the raw 64-bit
// output by code in this file (no std::*_distribution), so a given
// (seed, stream_id) produces the same sequence on every conforming platform.

#include <cstdint>
#include <random>

#include "fghs/matcore.hpp"

namespace fghs {

class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();
  /// Uniform integer in [0, n).
  std::uint64_t uniform_below(std::uint64_t n);
  /// Standard normal (Marsaglia polar method).
  double normal();
  /// Gamma(shape, rate); Marsaglia-Tsang squeeze, boosted for shape < 1.
  double gamma(double shape, double rate);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Density proportional to x^(-shape-1) exp(-scale/x).
double draw_inverse_gamma(RngStream& rng, double shape, double scale);

/// Standard half-Cauchy, |tan(pi U / 2)|.
double draw_half_cauchy(RngStream& rng);

/// λ² for λ ~ C+(0,1) via the scale mixture
///   ν ~ InvGamma(1/2, 1),  λ² | ν ~ InvGamma(1/2, 1/ν).
double draw_half_cauchy_sq_mixture(RngStream& rng);

/// x ~ N(0, Ω⁻¹): z ~ N(0, I), then solve Lᵀ x = z with Ω = L Lᵀ.
Vector draw_mvn_from_precision(RngStream& rng, const PrecisionMatrix& omega);
Vector draw_mvn_from_precision_factor(RngStream& rng, const Matrix& precision_lower);

/// x = g / sqrt(w), g ~ N(0, scale_matrix), w ~ Gamma(df/2, rate df/2).
/// Covariance is df/(df-2) * scale_matrix for df > 2.
Vector draw_mvt(RngStream& rng, const SymMatrix& scale_matrix, double df);
/// Same law with scale matrix Ω⁻¹, given the Cholesky factor of Ω.
Vector draw_mvt_from_precision_factor(RngStream& rng, const Matrix& precision_lower, double df);

}  // namespace fghs
