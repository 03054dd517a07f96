#include "fghs/harness.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>

#include <omp.h>

#include "fghs/diverge.hpp"
#include "fghs/kernels.hpp"
#include "fghs/matrix_io.hpp"

namespace fghs {

namespace {

struct Cell {
  std::size_t scenario;
  double alpha;
  std::size_t replicate;
};

std::vector<Cell> enumerate_cells(std::size_t n_scenarios, const std::vector<double>& alphas,
                                  std::size_t reps) {
  std::vector<Cell> cells;
  cells.reserve(n_scenarios * alphas.size() * reps);
  for (std::size_t s = 0; s < n_scenarios; ++s)
    for (double a : alphas)
      for (std::size_t r = 0; r < reps; ++r) cells.push_back({s, a, r});
  return cells;
}

std::vector<Scenario> seeded(const std::vector<Scenario>& scenarios, const GridOptions& opts) {
  std::vector<Scenario> out = scenarios;
  for (auto& s : out) {
    if (opts.master_seed) s.master_seed = *opts.master_seed;
    s.validate();
  }
  return out;
}

void check_alphas(const std::vector<double>& alphas) {
  if (alphas.empty()) throw ConfigError("at least one alpha is required");
  for (double a : alphas)
    if (!(a > 0.0 && a <= 1.0)) throw ConfigError("alpha values must lie in (0, 1]");
}

std::string fmt(double v) { return format_double(v); }

std::string fmt_opt(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

}  // namespace

std::size_t offdiag_support(const PrecisionMatrix& m) {
  std::size_t count = 0;
  for (Eigen::Index j = 1; j < m.dim(); ++j)
    for (Eigen::Index i = 0; i < j; ++i) count += m.mat()(i, j) != 0.0;
  return count;
}

ReplicateResult score_replicate(const std::string& scenario, double alpha, std::size_t replicate,
                                const ChainOutput& out, const PrecisionMatrix& truth) {
  ReplicateResult r;
  r.scenario = scenario;
  r.alpha = alpha;
  r.replicate = replicate;
  r.p = truth.dim();
  const double p2 = static_cast<double>(r.p) * static_cast<double>(r.p);
  r.frob_sq_raw = kernels::frobenius_sq_parallel(out.mean_omega.dense(), truth.dense());
  r.frob_sq_per_entry = r.frob_sq_raw / p2;
  r.frob_sq_psd = kernels::frobenius_sq_parallel(out.mean_omega_psd.dense(), truth.dense());
  r.kl_to_truth = kl_gaussian(out.mean_omega, truth);
  r.renyi_to_truth = alpha < 1.0 ? renyi_gaussian(out.mean_omega, truth, alpha) : r.kl_to_truth;
  r.runtime_seconds = out.runtime_seconds;
  r.clamp_events = out.clamp_events;
  return r;
}

ReplicateResult run_cell(const Scenario& scn, const PrecisionMatrix& truth, double alpha,
                         std::size_t replicate, const GridOptions& opts) {
  try {
    const Matrix y = generate_data(scn, truth, replicate, scn.master_seed);
    SamplerConfig cfg;
    cfg.alpha = alpha;
    cfg.n_iter = opts.n_iter;
    cfg.burn_in = opts.burn_in;
    cfg.thin = opts.thin;
    cfg.diag_mode = opts.diag_mode;
    cfg.seed = scn.master_seed;
    cfg.stream_id = chain_stream(replicate);
    const ChainOutput out = run_chain(y, cfg);
    return score_replicate(scn.name, alpha, replicate, out, truth);
  } catch (const std::exception& e) {
    ReplicateResult r;
    r.scenario = scn.name;
    r.alpha = alpha;
    r.replicate = replicate;
    r.p = scn.p;
    r.ok = false;
    r.message = e.what();
    return r;
  }
}

std::vector<ReplicateResult> run_grid(const std::vector<Scenario>& scenarios,
                                      const std::vector<double>& alphas, std::size_t reps,
                                      const GridOptions& opts) {
  check_alphas(alphas);
  const auto scns = seeded(scenarios, opts);
  std::vector<PrecisionMatrix> truths;
  for (const auto& s : scns) truths.push_back(make_truth(s));
  const auto cells = enumerate_cells(scns.size(), alphas, reps);
  std::vector<ReplicateResult> results(cells.size());
  const int threads = opts.jobs > 0 ? opts.jobs : omp_get_max_threads();
  const auto count = static_cast<std::ptrdiff_t>(cells.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    const Cell& c = cells[static_cast<std::size_t>(k)];
    results[static_cast<std::size_t>(k)] =
        run_cell(scns[c.scenario], truths[c.scenario], c.alpha, c.replicate, opts);
  }
  return results;
}

std::vector<ReplicateResult> run_grid_serial(const std::vector<Scenario>& scenarios,
                                             const std::vector<double>& alphas, std::size_t reps,
                                             const GridOptions& opts) {
  check_alphas(alphas);
  const auto scns = seeded(scenarios, opts);
  std::vector<ReplicateResult> results;
  for (const Cell& c : enumerate_cells(scns.size(), alphas, reps)) {
    const PrecisionMatrix truth = make_truth(scns[c.scenario]);
    results.push_back(run_cell(scns[c.scenario], truth, c.alpha, c.replicate, opts));
  }
  return results;
}

namespace {

struct Moments {
  double mean = 0;
  std::optional<double> sd;
};

Moments moments(const std::vector<double>& v) {
  Moments m;
  if (v.empty()) return m;
  double sum = 0;
  for (double x : v) sum += x;
  m.mean = sum / static_cast<double>(v.size());
  if (v.size() >= 2) {
    double ss = 0;
    for (double x : v) ss += (x - m.mean) * (x - m.mean);
    m.sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
  }
  return m;
}

double mean_of(const std::vector<double>& v) { return moments(v).mean; }

}  // namespace

std::vector<AggregateRow> aggregate(const std::vector<ReplicateResult>& results) {
  struct Acc {
    std::vector<double> err, raw, psd, kl, renyi;
    std::size_t dropped = 0;
  };
  std::vector<std::pair<std::string, double>> order;
  std::map<std::pair<std::string, double>, Acc> cells;
  for (const auto& r : results) {
    const auto key = std::make_pair(r.scenario, r.alpha);
    if (!cells.count(key)) order.push_back(key);
    Acc& a = cells[key];
    if (!r.ok) {
      ++a.dropped;
      continue;
    }
    a.err.push_back(r.frob_sq_per_entry);
    a.raw.push_back(r.frob_sq_raw);
    a.psd.push_back(r.frob_sq_psd / (static_cast<double>(r.p) * static_cast<double>(r.p)));
    a.kl.push_back(r.kl_to_truth);
    a.renyi.push_back(r.renyi_to_truth);
  }
  std::vector<AggregateRow> rows;
  for (const auto& key : order) {
    const Acc& a = cells[key];
    AggregateRow row;
    row.scenario = key.first;
    row.alpha = key.second;
    row.n_reps = a.err.size();
    row.dropped = a.dropped;
    const Moments m = moments(a.err);
    row.mean_err = m.mean;
    row.sd_err = m.sd;
    row.mean_err_raw = mean_of(a.raw);
    row.mean_err_psd = mean_of(a.psd);
    row.mean_kl = mean_of(a.kl);
    row.mean_renyi = mean_of(a.renyi);
    rows.push_back(row);
  }
  return rows;
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw DimensionMismatch("least_squares_slope: need two or more paired points");
  const double mx = mean_of(x);
  const double my = mean_of(y);
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

TrendTable concentration_sweep(const Scenario& base, const std::vector<Eigen::Index>& n_values,
                               std::size_t reps, double alpha, const GridOptions& opts) {
  if (n_values.size() < 2) throw ConfigError("concentration: need at least two n values");
  if (reps < 1) throw ConfigError("concentration: reps must be positive");
  for (std::size_t k = 1; k < n_values.size(); ++k)
    if (n_values[k] <= n_values[k - 1]) throw ConfigError("concentration: n values must increase");
  check_alphas({alpha});

  Scenario scn = seeded({base}, opts).front();
  const PrecisionMatrix truth = make_truth(scn);
  const double s = static_cast<double>(offdiag_support(truth));
  const double p = static_cast<double>(scn.p);

  TrendTable table;
  table.scenario = scn.name;
  table.alpha = alpha;
  std::vector<Scenario> per_n;
  for (Eigen::Index n : n_values) {
    Scenario at_n = scn;
    at_n.n = n;
    at_n.name = scn.name + "_n" + std::to_string(n);
    per_n.push_back(at_n);
  }
  const auto cells = enumerate_cells(per_n.size(), {alpha}, reps);
  std::vector<ReplicateResult> results(cells.size());
  const int threads = opts.jobs > 0 ? opts.jobs : omp_get_max_threads();
  const auto count = static_cast<std::ptrdiff_t>(cells.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    const Cell& c = cells[static_cast<std::size_t>(k)];
    results[static_cast<std::size_t>(k)] = run_cell(per_n[c.scenario], truth, alpha, c.replicate, opts);
  }

  std::vector<double> log_n, log_err;
  for (std::size_t i = 0; i < per_n.size(); ++i) {
    std::vector<double> raw, entry;
    TrendRow row;
    row.n = per_n[i].n;
    row.eps_n = s > 0 ? s * std::log(p / s) / static_cast<double>(row.n) : 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
      const auto& res = results[i * reps + r];
      if (!res.ok) {
        ++row.dropped;
        continue;
      }
      raw.push_back(res.frob_sq_raw);
      entry.push_back(res.frob_sq_per_entry);
    }
    row.n_reps = raw.size();
    const Moments m = moments(raw);
    row.mean_frob_sq = m.mean;
    row.sd_frob_sq = m.sd;
    row.mean_per_entry = mean_of(entry);
    table.rows.push_back(row);
    if (row.n_reps > 0) {
      log_n.push_back(std::log(static_cast<double>(row.n)));
      log_err.push_back(std::log(row.mean_frob_sq));
    }
  }
  table.strictly_decreasing = true;
  for (std::size_t i = 1; i < table.rows.size(); ++i)
    table.strictly_decreasing = table.strictly_decreasing &&
                                table.rows[i].n_reps > 0 && table.rows[i - 1].n_reps > 0 &&
                                table.rows[i].mean_frob_sq < table.rows[i - 1].mean_frob_sq;
  table.log_log_slope = log_n.size() >= 2 ? least_squares_slope(log_n, log_err) : std::nan("");
  return table;
}

void write_results_csv(std::ostream& os, const std::vector<ReplicateResult>& results) {
  os << kResultsSchema << '\n'
     << "scenario,alpha,replicate,frob_sq_raw,frob_sq_per_entry,frob_sq_psd,kl_to_truth,"
        "renyi_to_truth,runtime_seconds,clamp_events,status\n";
  for (const auto& r : results) {
    os << r.scenario << ',' << fmt(r.alpha) << ',' << r.replicate << ',';
    if (r.ok) {
      os << fmt(r.frob_sq_raw) << ',' << fmt(r.frob_sq_per_entry) << ',' << fmt(r.frob_sq_psd)
         << ',' << fmt(r.kl_to_truth) << ',' << fmt(r.renyi_to_truth) << ','
         << fmt(r.runtime_seconds) << ',' << r.clamp_events << ",ok\n";
    } else {
      os << ",,,,," << fmt(r.runtime_seconds) << ",,failed\n";
    }
  }
}

void write_summary_csv(std::ostream& os, const std::vector<AggregateRow>& rows) {
  os << kSummarySchema << '\n'
     << "scenario,alpha,n_reps,dropped,mean_err,sd_err,mean_err_raw,mean_err_psd,mean_kl,"
        "mean_renyi\n";
  for (const auto& r : rows) {
    os << r.scenario << ',' << fmt(r.alpha) << ',' << r.n_reps << ',' << r.dropped << ','
       << fmt(r.mean_err) << ',' << fmt_opt(r.sd_err) << ',' << fmt(r.mean_err_raw) << ','
       << fmt(r.mean_err_psd) << ',' << fmt(r.mean_kl) << ',' << fmt(r.mean_renyi) << '\n';
  }
}

void write_trend_csv(std::ostream& os, const TrendTable& t) {
  os << kTrendSchema << '\n'
     << "# scenario = " << t.scenario << ", alpha = " << fmt(t.alpha)
     << ", log_log_slope = " << fmt(t.log_log_slope)
     << ", strictly_decreasing = " << (t.strictly_decreasing ? "true" : "false") << '\n'
     << "n,eps_n,n_reps,dropped,mean_frob_sq,sd_frob_sq,mean_per_entry\n";
  for (const auto& r : t.rows) {
    os << r.n << ',' << fmt(r.eps_n) << ',' << r.n_reps << ',' << r.dropped << ','
       << fmt(r.mean_frob_sq) << ',' << fmt_opt(r.sd_frob_sq) << ',' << fmt(r.mean_per_entry)
       << '\n';
  }
}

void print_summary_table(std::ostream& os, const std::vector<AggregateRow>& rows) {
  char line[256];
  std::snprintf(line, sizeof line, "%-18s %6s %5s %8s %20s %12s %12s\n", "scenario", "alpha",
                "reps", "dropped", "mean_err (sd)", "mean_kl", "mean_renyi");
  os << line;
  for (const auto& r : rows) {
    char err[64];
    if (r.sd_err)
      std::snprintf(err, sizeof err, "%.4f (%.4f)", r.mean_err, *r.sd_err);
    else
      std::snprintf(err, sizeof err, "%.4f", r.mean_err);
    std::snprintf(line, sizeof line, "%-18s %6.2f %5zu %8zu %20s %12.4f %12.4f\n",
                  r.scenario.c_str(), r.alpha, r.n_reps, r.dropped, err, r.mean_kl, r.mean_renyi);
    os << line;
  }
}

}  // namespace fghs
