#pragma once

// Gibbs sampler for the α-tempered graphical horseshoe posterior
//
//   Π(Ω | Y) ∝ L(Y | Ω)^α · Π_i<j N(ω_ij; 0, λ²_ij τ²) C+(λ_ij) · C+(τ)
//
// restricted to positive-definite Ω. Raising the Gaussian likelihood to α is
// the same as using the ordinary likelihood with effective statistics
// (αYᵀY, αn), so every conditional below is written in terms of
// SufficientStats and α never appears past sufficient_stats().
//
// Each sweep updates Ω one column at a time. With column i moved last,
//   Ω = [Ω11 β; βᵀ ω22],  γ = ω22 − βᵀ Ω11⁻¹ β  (Schur complement),
// the column block has
//   Free:      γ ~ Gamma(n_eff/2 + 1, rate s22/2),
//              β ~ N(−C s12, C),  C⁻¹ = s22 Ω11⁻¹ + D⁻¹,
//   FixedUnit: ω22 = 1 and β has density
//              ∝ (1 − βᵀΩ11⁻¹β)₊^(n_eff/2) exp(−s12ᵀβ − ½ βᵀD⁻¹β),
// where D = diag(λ²τ²) over the column's pairs. The FixedUnit density is not
// Gaussian; it is sampled exactly by rejection from the Gaussian envelope with
// precision n_eff Ω11⁻¹ + D⁻¹, which dominates it because (1 − q) ≤ e^(−q).
// Both modes keep Ω positive definite. The horseshoe scales then follow the
// inverse-gamma auxiliary-variable updates.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fghs/matcore.hpp"
#include "fghs/rngdist.hpp"

namespace fghs {

struct SufficientStats {
  SymMatrix scatter;  // α YᵀY
  double n_eff;       // α n
};

/// (αYᵀY, αn). Requires n ≥ 1 and α ∈ (0, 1].
SufficientStats sufficient_stats(const Matrix& y, double alpha);

/// Local scales λ²_ij with auxiliaries ν_ij over the i < j pairs, and the
/// global τ² with its auxiliary ξ.
class ShrinkageState {
 public:
  /// All scales and auxiliaries set to 1.
  explicit ShrinkageState(Eigen::Index p);

  Eigen::Index dim() const noexcept { return p_; }
  std::size_t pair_count() const noexcept { return lambda_sq_.size(); }
  /// Packed index of the unordered pair {i, j}, i != j.
  std::size_t pair_index(Eigen::Index i, Eigen::Index j) const;

  double lambda_sq(Eigen::Index i, Eigen::Index j) const { return lambda_sq_[pair_index(i, j)]; }
  double nu(Eigen::Index i, Eigen::Index j) const { return nu_[pair_index(i, j)]; }
  void set_lambda_sq(Eigen::Index i, Eigen::Index j, double v) { lambda_sq_[pair_index(i, j)] = v; }
  void set_nu(Eigen::Index i, Eigen::Index j, double v) { nu_[pair_index(i, j)] = v; }

  double tau_sq = 1.0;
  double xi = 1.0;

  bool valid() const;

 private:
  Eigen::Index p_;
  std::vector<double> lambda_sq_;
  std::vector<double> nu_;
};

struct SamplerConfig {
  double alpha = 1.0;
  std::size_t n_iter = 1100;
  std::size_t burn_in = 100;
  DiagMode diag_mode = DiagMode::Free;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  std::size_t thin = 1;

  /// Throws ConfigError when the fields are inconsistent.
  void validate() const;
  std::size_t samples_kept() const { return (n_iter - burn_in) / thin; }
};

/// Lower and upper bounds applied to every scale draw.
inline constexpr double kScaleFloor = 1e-12;
inline constexpr double kScaleCeil = 1e12;

/// Rejection attempts per FixedUnit column before an independence
/// Metropolis-Hastings step with the same envelope is used instead.
inline constexpr int kFixedUnitMaxRejections = 200;

struct ChainState {
  Matrix omega;  // symmetric, positive definite
  Matrix sigma;  // Ω⁻¹, kept in sync by the column updates
  ShrinkageState shrinkage;
  std::size_t clamp_events = 0;
  std::size_t fallback_steps = 0;

  /// Ω = I, all scales 1.
  static ChainState initial(Eigen::Index p);
  /// Recomputes sigma from omega; throws NotPositiveDefinite.
  void refresh_sigma();
};

/// FixedUnit columns have density ∝ (1 − q)₊^m exp(−s12ᵀβ − ½βᵀD⁻¹β) with
/// q = βᵀΩ11⁻¹β. Bounding log(1 − q) by its tangent at q0 gives a Gaussian
/// envelope with precision (2m / (1 − q0)) Ω11⁻¹ + D⁻¹. q0 is placed where the
/// envelope mean μ satisfies q(μ) = q0, i.e. at the conditional mode, and
/// depends only on the conditioning quantities.
///
/// Parameters of the column-i block conditional, embedded in the full p
/// coordinates: row and column `column` of omega11_inv are zero, the
/// precision has a unit pivot there, and mean(column) = 0. Restricting to the
/// other p − 1 coordinates gives the textbook block quantities.
struct ColumnConditional {
  Eigen::Index column = 0;
  Matrix omega11_inv;         // Ω11⁻¹
  Matrix precision;           // C⁻¹ (FixedUnit: the envelope precision)
  Matrix factor;              // lower Cholesky factor of precision
  Vector s12;
  Vector mean;                // −C s12
  double gamma_shape = 0;     // Free only
  double gamma_rate = 0;      // Free only
  double envelope_power = 0;  // FixedUnit only: n_eff / 2
  double envelope_anchor = 0; // FixedUnit only: q0 of the tangent bound
};

ColumnConditional column_conditional(const ChainState& state, const SufficientStats& stats,
                                     DiagMode mode, Eigen::Index column);

/// Parameters of the scale conditionals as (shape, scale) inverse-gamma pairs.
struct InvGammaParams {
  double shape;
  double scale;
};
InvGammaParams lambda_sq_conditional(double omega_ij, double nu_ij, double tau_sq);
InvGammaParams nu_conditional(double lambda_sq_ij);
InvGammaParams tau_sq_conditional(const Matrix& omega, const ShrinkageState& s);
InvGammaParams xi_conditional(double tau_sq);

/// Updates every column of Ω (scales held fixed).
void sweep_columns(ChainState& state, const SufficientStats& stats, DiagMode mode, RngStream& rng);
/// Updates λ², ν, then τ², ξ given Ω.
void update_shrinkage(ChainState& state, RngStream& rng);
/// One full sweep: sweep_columns then update_shrinkage.
void gibbs_sweep(ChainState& state, const SufficientStats& stats, DiagMode mode, RngStream& rng);

struct ChainOutput {
  PrecisionMatrix mean_omega;
  SymMatrix mean_omega_psd;
  SymMatrix per_entry_variance;
  std::size_t samples_kept = 0;
  std::size_t clamp_events = 0;
  std::size_t fallback_steps = 0;
  double runtime_seconds = 0.0;
};

ChainOutput run_chain(const Matrix& y, const SamplerConfig& config);
/// Same chain driven from precomputed effective statistics.
ChainOutput run_chain_from_stats(const SufficientStats& stats, const SamplerConfig& config);

/// Unnormalized log posterior (tempering folded into stats):
///   (n_eff/2) log det Ω − ½ tr(S_eff Ω) + Σ_i<j log N(ω_ij; 0, λ²τ²)
///   + Σ_i<j log C+(λ_ij) + log C+(τ).
double log_posterior_unnorm(const PrecisionMatrix& omega, const ShrinkageState& state,
                            const SufficientStats& stats);

}  // namespace fghs
