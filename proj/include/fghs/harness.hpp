#pragma once

// Replicate grids over (scenario x alpha x replicate), aggregation into
// mean/sd rows, the sample-size sweep, and the CSV formats they emit.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fghs/sampler.hpp"
#include "fghs/scenarios.hpp"

namespace fghs {

struct GridOptions {
  std::size_t n_iter = 1100;
  std::size_t burn_in = 100;
  std::size_t thin = 1;
  DiagMode diag_mode = DiagMode::Free;
  /// Replaces every scenario's master_seed when set.
  std::optional<std::uint64_t> master_seed;
  /// Worker threads for the parallel grid; 0 means all available.
  int jobs = 0;
};

struct ReplicateResult {
  std::string scenario;
  double alpha = 0;
  std::size_t replicate = 0;
  Eigen::Index p = 0;
  double frob_sq_raw = 0;
  double frob_sq_per_entry = 0;
  double frob_sq_psd = 0;
  double kl_to_truth = 0;
  /// D_α(estimate, truth) at the cell's α; the KL limit at α = 1.
  double renyi_to_truth = 0;
  double runtime_seconds = 0;
  std::size_t clamp_events = 0;
  bool ok = true;
  std::string message;
};

struct AggregateRow {
  std::string scenario;
  double alpha = 0;
  std::size_t n_reps = 0;
  std::size_t dropped = 0;
  double mean_err = 0;  // per-entry squared Frobenius error
  std::optional<double> sd_err;
  double mean_err_raw = 0;
  double mean_err_psd = 0;
  double mean_kl = 0;
  double mean_renyi = 0;
};

/// Errors of one chain output against the truth.
ReplicateResult score_replicate(const std::string& scenario, double alpha, std::size_t replicate,
                                const ChainOutput& out, const PrecisionMatrix& truth);

/// One replicate: generate data, run the chain, score it. Never throws;
/// failures come back with ok = false.
ReplicateResult run_cell(const Scenario& scn, const PrecisionMatrix& truth, double alpha,
                         std::size_t replicate, const GridOptions& opts);

/// Cells are ordered scenario-major, then alpha, then replicate. The parallel
/// and serial versions return identical results apart from runtime_seconds.
std::vector<ReplicateResult> run_grid(const std::vector<Scenario>& scenarios,
                                      const std::vector<double>& alphas, std::size_t reps,
                                      const GridOptions& opts);
std::vector<ReplicateResult> run_grid_serial(const std::vector<Scenario>& scenarios,
                                             const std::vector<double>& alphas, std::size_t reps,
                                             const GridOptions& opts);

/// Mean and sample sd (n−1) per (scenario, alpha) cell, failures excluded and
/// counted in `dropped`. Rows keep first-appearance order.
std::vector<AggregateRow> aggregate(const std::vector<ReplicateResult>& results);

struct TrendRow {
  Eigen::Index n = 0;
  double eps_n = 0;  // s log(p/s) / n
  std::size_t n_reps = 0;
  std::size_t dropped = 0;
  double mean_frob_sq = 0;
  std::optional<double> sd_frob_sq;
  double mean_per_entry = 0;
};

struct TrendTable {
  std::string scenario;
  double alpha = 0;
  std::vector<TrendRow> rows;
  /// Least-squares slope of log(mean error) against log(n).
  double log_log_slope = 0;
  bool strictly_decreasing = false;
};

/// Runs the base scenario at each n with a fixed truth; data re-drawn per
/// (n, replicate).
TrendTable concentration_sweep(const Scenario& base, const std::vector<Eigen::Index>& n_values,
                               std::size_t reps, double alpha, const GridOptions& opts);

/// Least-squares slope of y on x.
double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Number of nonzero off-diagonal pairs.
std::size_t offdiag_support(const PrecisionMatrix& m);

inline constexpr const char* kResultsSchema = "# fghs-results v1";
inline constexpr const char* kSummarySchema = "# fghs-summary v1";
inline constexpr const char* kTrendSchema = "# fghs-trend v1";

void write_results_csv(std::ostream& os, const std::vector<ReplicateResult>& results);
void write_summary_csv(std::ostream& os, const std::vector<AggregateRow>& rows);
void write_trend_csv(std::ostream& os, const TrendTable& table);
/// Fixed-width console rendering of aggregate rows.
void print_summary_table(std::ostream& os, const std::vector<AggregateRow>& rows);

}  // namespace fghs
