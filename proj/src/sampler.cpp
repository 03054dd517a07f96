#include "fghs/sampler.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fghs/kernels.hpp"

namespace fghs {

SufficientStats sufficient_stats(const Matrix& y, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw ParameterDomain("sufficient_stats: alpha must lie in (0, 1]");
  if (y.rows() < 1) throw DimensionMismatch("sufficient_stats: need at least one data row");
  if (y.cols() < 2) throw DimensionMismatch("sufficient_stats: need at least two variables");
  if (!y.allFinite()) throw ParameterDomain("sufficient_stats: data contain non-finite values");
  const Matrix scatter = kernels::scatter_parallel(y);
  return {SymMatrix::from_upper(alpha * scatter), alpha * static_cast<double>(y.rows())};
}

// ShrinkageState ----------------------------------------------------------

ShrinkageState::ShrinkageState(Eigen::Index p)
    : p_(p),
      lambda_sq_(static_cast<std::size_t>(p * (p - 1) / 2), 1.0),
      nu_(lambda_sq_.size(), 1.0) {
  if (p < 2) throw ParameterDomain("ShrinkageState: need p >= 2");
}

std::size_t ShrinkageState::pair_index(Eigen::Index i, Eigen::Index j) const {
  const auto a = static_cast<std::size_t>(std::min(i, j));
  const auto b = static_cast<std::size_t>(std::max(i, j));
  const auto p = static_cast<std::size_t>(p_);
  return a * p - a * (a + 1) / 2 + (b - a - 1);
}

bool ShrinkageState::valid() const {
  auto ok = [](double v) { return std::isfinite(v) && v > 0.0; };
  return ok(tau_sq) && ok(xi) && std::all_of(lambda_sq_.begin(), lambda_sq_.end(), ok) &&
         std::all_of(nu_.begin(), nu_.end(), ok);
}

// SamplerConfig -----------------------------------------------------------

void SamplerConfig::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in (0, 1]");
  if (n_iter == 0) throw ConfigError("n_iter must be positive");
  if (burn_in >= n_iter) throw ConfigError("burn_in must be smaller than n_iter");
  if (thin == 0) throw ConfigError("thin must be positive");
  if (samples_kept() == 0) throw ConfigError("no samples kept after burn-in and thinning");
}

// ChainState ---------------------------------------------------------------

ChainState ChainState::initial(Eigen::Index p) {
  return ChainState{Matrix::Identity(p, p), Matrix::Identity(p, p), ShrinkageState(p)};
}

void ChainState::refresh_sigma() { sigma = inverse_pd(SymMatrix::from_upper(omega)).dense(); }

namespace {

double clamp_scale(double v, std::size_t& events) {
  if (!(v >= kScaleFloor)) {
    ++events;
    return kScaleFloor;
  }
  if (v > kScaleCeil) {
    ++events;
    return kScaleCeil;
  }
  return v;
}

// log of the FixedUnit target over its tangent envelope at q0; at most 0.
double envelope_log_weight(double q, double q0, double m) {
  if (!(q < 1.0)) return -std::numeric_limits<double>::infinity();
  return m * (std::log1p(-q) - std::log1p(-q0) + (q - q0) / (1.0 - q0));
}

constexpr double kAnchorCeil = 1.0 - 1e-9;
constexpr int kAnchorEvals = 12;
constexpr double kAnchorTol = 1e-3;

// Fills precision, factor and mean for a given data weight on Ω11⁻¹.
void fill_gaussian(ColumnConditional& c, const ChainState& state, double data_weight) {
  const Eigen::Index p = c.omega11_inv.rows();
  c.precision = data_weight * c.omega11_inv;
  const double tau_sq = state.shrinkage.tau_sq;
  for (Eigen::Index k = 0; k < p; ++k) {
    if (k == c.column) continue;
    c.precision(k, k) += 1.0 / (state.shrinkage.lambda_sq(k, c.column) * tau_sq);
  }
  c.precision(c.column, c.column) = 1.0;
  c.factor = c.precision;
  if (!cholesky_lower_in_place(c.factor))
    throw NotPositiveDefinite("column " + std::to_string(c.column) +
                              ": conditional precision is not positive definite");
  c.mean = c.factor.triangularView<Eigen::Lower>().solve(c.s12);
  c.factor.triangularView<Eigen::Lower>().transpose().solveInPlace(c.mean);
  c.mean = -c.mean;
  c.mean(c.column) = 0.0;
}

}  // namespace

ColumnConditional column_conditional(const ChainState& state, const SufficientStats& stats,
                                     DiagMode mode, Eigen::Index column) {
  const Matrix& s = stats.scatter.dense();

  ColumnConditional c;
  c.column = column;
  // Ω11⁻¹ = Σ11 − σ12 σ12ᵀ / σ22; the same rank-one downdate on the full Σ
  // zeroes row and column i and leaves Ω11⁻¹ in the remaining block.
  const Vector sigma_col = state.sigma.col(column);
  c.omega11_inv = state.sigma;
  c.omega11_inv.noalias() -= sigma_col * (sigma_col.transpose() / sigma_col(column));
  c.omega11_inv.row(column).setZero();
  c.omega11_inv.col(column).setZero();

  c.s12 = s.col(column);
  c.s12(column) = 0.0;
  const double s22 = s(column, column);

  if (mode == DiagMode::Free) {
    fill_gaussian(c, state, s22);
    c.gamma_shape = 0.5 * stats.n_eff + 1.0;
    c.gamma_rate = 0.5 * s22;
    return c;
  }

  // f(q0) = q(μ(q0)) − q0 decreases from f(0) ≥ 0 to about −1; Illinois
  // regula falsi on [0, kAnchorCeil].
  c.envelope_power = 0.5 * stats.n_eff;
  auto f = [&](double q0) {
    c.envelope_anchor = q0;
    fill_gaussian(c, state, stats.n_eff / (1.0 - q0));
    return c.mean.dot(c.omega11_inv * c.mean) - q0;
  };
  double lo = 0.0, f_lo = f(0.0);
  if (f_lo < kAnchorTol) return c;
  double hi = kAnchorCeil, f_hi = f(hi);
  if (f_hi >= 0.0) return c;
  int side = 0;
  for (int k = 2; k < kAnchorEvals; ++k) {
    const double q0 = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
    const double fq = f(q0);
    if (std::abs(fq) < kAnchorTol * (1.0 - q0)) break;
    if (fq > 0.0) {
      lo = q0;
      f_lo = fq;
      if (side == 1) f_hi *= 0.5;
      side = 1;
    } else {
      hi = q0;
      f_hi = fq;
      if (side == -1) f_lo *= 0.5;
      side = -1;
    }
  }
  return c;
}

namespace {

void update_column(ChainState& st, const SufficientStats& stats, DiagMode mode, RngStream& rng,
                   Eigen::Index column) {
  const Eigen::Index p = st.omega.rows();
  const ColumnConditional c = column_conditional(st, stats, mode, column);

  auto draw_beta = [&] {
    Vector z(p);
    for (Eigen::Index k = 0; k < p; ++k) z(k) = k == column ? 0.0 : rng.normal();
    c.factor.triangularView<Eigen::Lower>().transpose().solveInPlace(z);
    return Vector(c.mean + z);
  };
  auto quad = [&](const Vector& b) { return b.dot(c.omega11_inv * b); };

  Vector beta;
  double schur;
  double omega22;
  if (mode == DiagMode::Free) {
    beta = draw_beta();
    if (!(c.gamma_rate > 0.0))
      throw ParameterDomain("column " + std::to_string(column) + ": zero scatter on the diagonal");
    schur = rng.gamma(c.gamma_shape, c.gamma_rate);
    omega22 = schur + quad(beta);
  } else {
    const double m = c.envelope_power;
    const double q0 = c.envelope_anchor;
    bool accepted = false;
    for (int attempt = 0; attempt < kFixedUnitMaxRejections && !accepted; ++attempt) {
      beta = draw_beta();
      accepted = std::log(rng.uniform()) < envelope_log_weight(quad(beta), q0, m);
    }
    if (!accepted) {
      // Independence Metropolis step with the same envelope, which does not
      // depend on the current column.
      ++st.fallback_steps;
      Vector current = st.omega.col(column);
      current(column) = 0.0;
      const double log_w_cur = envelope_log_weight(quad(current), q0, m);
      Vector proposal = draw_beta();
      const double log_w_new = envelope_log_weight(quad(proposal), q0, m);
      beta = std::log(rng.uniform()) < log_w_new - log_w_cur ? proposal : current;
    }
    schur = 1.0 - quad(beta);
    omega22 = 1.0;
  }

  beta(column) = omega22;
  st.omega.col(column) = beta;
  st.omega.row(column) = beta.transpose();

  // New Σ = Ω11⁻¹ ⊕ 0 + u uᵀ / γ with u = Ω11⁻¹ β − e_i.
  Vector u = c.omega11_inv * beta;
  u(column) = -1.0;
  st.sigma = c.omega11_inv;
  st.sigma.noalias() += u * (u.transpose() / schur);
}

}  // namespace

InvGammaParams lambda_sq_conditional(double omega_ij, double nu_ij, double tau_sq) {
  return {1.0, 1.0 / nu_ij + omega_ij * omega_ij / (2.0 * tau_sq)};
}

InvGammaParams nu_conditional(double lambda_sq_ij) { return {1.0, 1.0 + 1.0 / lambda_sq_ij}; }

InvGammaParams tau_sq_conditional(const Matrix& omega, const ShrinkageState& s) {
  const Eigen::Index p = omega.rows();
  double acc = 0.0;
  for (Eigen::Index j = 1; j < p; ++j)
    for (Eigen::Index i = 0; i < j; ++i) acc += omega(i, j) * omega(i, j) / (2.0 * s.lambda_sq(i, j));
  return {(static_cast<double>(s.pair_count()) + 1.0) / 2.0, 1.0 / s.xi + acc};
}

InvGammaParams xi_conditional(double tau_sq) { return {1.0, 1.0 + 1.0 / tau_sq}; }

void sweep_columns(ChainState& state, const SufficientStats& stats, DiagMode mode, RngStream& rng) {
  const Eigen::Index p = state.omega.rows();
  if (stats.scatter.dim() != p) throw DimensionMismatch("sweep_columns: stats and state differ in p");
  state.refresh_sigma();
  for (Eigen::Index i = 0; i < p; ++i) update_column(state, stats, mode, rng, i);
}

void update_shrinkage(ChainState& state, RngStream& rng) {
  ShrinkageState& s = state.shrinkage;
  const Eigen::Index p = state.omega.rows();
  auto draw = [&](InvGammaParams ig) {
    return clamp_scale(draw_inverse_gamma(rng, ig.shape, ig.scale), state.clamp_events);
  };
  for (Eigen::Index j = 1; j < p; ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      s.set_lambda_sq(i, j, draw(lambda_sq_conditional(state.omega(i, j), s.nu(i, j), s.tau_sq)));
      s.set_nu(i, j, draw(nu_conditional(s.lambda_sq(i, j))));
    }
  }
  s.tau_sq = draw(tau_sq_conditional(state.omega, s));
  s.xi = draw(xi_conditional(s.tau_sq));
}

void gibbs_sweep(ChainState& state, const SufficientStats& stats, DiagMode mode, RngStream& rng) {
  sweep_columns(state, stats, mode, rng);
  update_shrinkage(state, rng);
}

ChainOutput run_chain_from_stats(const SufficientStats& stats, const SamplerConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const Eigen::Index p = stats.scatter.dim();
  RngStream rng(config.seed, config.stream_id);
  ChainState state = ChainState::initial(p);

  Matrix mean = Matrix::Zero(p, p);
  Matrix m2 = Matrix::Zero(p, p);
  std::size_t kept = 0;
  for (std::size_t it = 0; it < config.n_iter; ++it) {
    try {
      gibbs_sweep(state, stats, config.diag_mode, rng);
    } catch (const Error& e) {
      throw Error(e.kind(), "sweep " + std::to_string(it) + ": " + e.what());
    }
    if (it < config.burn_in || (it - config.burn_in + 1) % config.thin != 0) continue;
    ++kept;
    const Matrix delta = state.omega - mean;
    mean += delta / static_cast<double>(kept);
    m2 += delta.cwiseProduct(state.omega - mean);
  }

  SymMatrix mean_sym = SymMatrix::from_upper(mean);
  SymMatrix variance = kept > 1 ? SymMatrix::from_upper(m2 / static_cast<double>(kept - 1))
                                : SymMatrix::zeros(p);
  SymMatrix psd = nearest_psd(mean_sym);
  const auto stop = std::chrono::steady_clock::now();
  return ChainOutput{PrecisionMatrix(std::move(mean_sym), config.diag_mode),
                     std::move(psd),
                     std::move(variance),
                     kept,
                     state.clamp_events,
                     state.fallback_steps,
                     std::chrono::duration<double>(stop - start).count()};
}

ChainOutput run_chain(const Matrix& y, const SamplerConfig& config) {
  config.validate();
  return run_chain_from_stats(sufficient_stats(y, config.alpha), config);
}

double log_posterior_unnorm(const PrecisionMatrix& omega, const ShrinkageState& state,
                            const SufficientStats& stats) {
  const Matrix& w = omega.dense();
  const Eigen::Index p = w.rows();
  if (stats.scatter.dim() != p || state.dim() != p)
    throw DimensionMismatch("log_posterior_unnorm: dimensions differ");
  const double ld = log_det(omega.mat());
  const double trace = stats.scatter.dense().cwiseProduct(w).sum();
  double lp = 0.5 * stats.n_eff * ld - 0.5 * trace;

  constexpr double log_2pi = 1.8378770664093454836;
  const double log_half_cauchy_norm = std::log(2.0 / std::numbers::pi);
  for (Eigen::Index j = 1; j < p; ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      const double lsq = state.lambda_sq(i, j);
      const double var = lsq * state.tau_sq;
      lp += -0.5 * (log_2pi + std::log(var)) - 0.5 * w(i, j) * w(i, j) / var;
      lp += log_half_cauchy_norm - std::log1p(lsq);
    }
  }
  lp += log_half_cauchy_norm - std::log1p(state.tau_sq);
  return lp;
}

}  // namespace fghs
