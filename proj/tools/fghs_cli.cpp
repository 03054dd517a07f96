// fghs: simulate, estimate and compare precision matrices from the shell.
//
// Exit status: 0 on success, 1 when a chain or grid cell fails, 2 on bad
// arguments or unreadable inputs.

#include <CLI11.hpp>

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "fghs/diverge.hpp"
#include "fghs/harness.hpp"
#include "fghs/matrix_io.hpp"
#include "fghs/sampler.hpp"
#include "fghs/scenarios.hpp"

using namespace fghs;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

std::optional<std::uint64_t> env_seed() {
  const char* v = std::getenv("FGHS_SEED");
  if (!v || !*v) return std::nullopt;
  char* end = nullptr;
  errno = 0;
  const unsigned long long s = std::strtoull(v, &end, 10);
  if (errno != 0 || *end != '\0' || *v == '-')
    throw ConfigError(std::string("FGHS_SEED is not an unsigned integer: '") + v + "'");
  return s;
}

// Runs `f`, turning any library error into a ConfigError: used for loading
// and validating user inputs.
template <class F>
auto as_input(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot write '" + path + "'");
  return os;
}

std::string default_summary_path(const std::string& out) {
  const auto dot = out.rfind('.');
  const auto slash = out.find_last_of('/');
  const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
  return (has_ext ? out.substr(0, dot) : out) + "_summary.csv";
}

struct GenerateArgs {
  std::string scenario, out, truth_out;
  std::size_t replicate = 0;
};

int cmd_generate(const GenerateArgs& a) {
  Scenario scn = as_input([&] { return load_scenario(a.scenario); });
  if (const auto s = env_seed()) scn.master_seed = *s;
  const PrecisionMatrix truth = as_input([&] { return make_truth(scn); });
  const Matrix y = generate_data(scn, truth, a.replicate, scn.master_seed);
  as_input([&] { save_data_matrix(a.out, y); });
  if (!a.truth_out.empty()) {
    as_input([&] {
      save_sym_matrix(a.truth_out, truth.mat(),
                      {{"scenario", scn.name},
                       {"diag_mode", to_string(truth.diag_mode())},
                       {"master_seed", std::to_string(scn.master_seed)}});
    });
  }
  return 0;
}

struct EstimateArgs {
  std::string data, out, psd_out, diag_mode = "free";
  double alpha = 1.0;
  std::size_t iters = 1100, burnin = 100, thin = 1;
  std::optional<std::uint64_t> seed;
};

int cmd_estimate(const EstimateArgs& a) {
  const Matrix y = as_input([&] { return load_data_matrix(a.data); });
  SamplerConfig cfg;
  cfg.alpha = a.alpha;
  cfg.n_iter = a.iters;
  cfg.burn_in = a.burnin;
  cfg.thin = a.thin;
  cfg.diag_mode = as_input([&] { return parse_diag_mode(a.diag_mode); });
  cfg.seed = a.seed ? *a.seed : env_seed().value_or(0);
  as_input([&] {
    cfg.validate();
    sufficient_stats(y, cfg.alpha);
  });

  std::optional<ChainOutput> chain;
  try {
    chain = run_chain(y, cfg);
  } catch (const std::exception& e) {
    std::cerr << "fghs estimate: " << e.what() << '\n';
    return kExitFailure;
  }
  const ChainOutput& out = *chain;
  const std::vector<std::pair<std::string, std::string>> meta{
      {"alpha", format_double(cfg.alpha)},
      {"seed", std::to_string(cfg.seed)},
      {"iterations", std::to_string(cfg.n_iter)},
      {"burn_in", std::to_string(cfg.burn_in)},
      {"thin", std::to_string(cfg.thin)},
      {"diag_mode", to_string(cfg.diag_mode)},
      {"samples_kept", std::to_string(out.samples_kept)},
      {"clamp_events", std::to_string(out.clamp_events)},
      {"fallback_steps", std::to_string(out.fallback_steps)},
      {"runtime_seconds", format_double(out.runtime_seconds)}};
  as_input([&] { save_sym_matrix(a.out, out.mean_omega.mat(), meta); });
  if (!a.psd_out.empty()) as_input([&] { save_sym_matrix(a.psd_out, out.mean_omega_psd, meta); });
  std::cout << "samples_kept = " << out.samples_kept << "\nclamp_events = " << out.clamp_events
            << "\nruntime_seconds = " << format_double(out.runtime_seconds) << '\n';
  return 0;
}

struct DivergeArgs {
  std::string a, b;
  double alpha = 0.5;
};

int cmd_diverge(const DivergeArgs& d) {
  auto load = [](const std::string& path) {
    return as_input([&] {
      SymMatrix m = load_sym_matrix(path);
      if (!is_positive_definite(m)) throw NotPositiveDefinite("'" + path + "' is not positive definite");
      return PrecisionMatrix(std::move(m), DiagMode::Free);
    });
  };
  const PrecisionMatrix w1 = load(d.a);
  const PrecisionMatrix w2 = load(d.b);
  if (w1.dim() != w2.dim()) throw ConfigError("matrices differ in dimension");
  if (!(d.alpha > 0.0 && d.alpha < 1.0)) throw ConfigError("--alpha must lie in (0, 1)");
  const DivergenceReport r = divergence_report(w1, w2, d.alpha);
  std::cout << "alpha = " << format_double(r.alpha) << "\nkl = " << format_double(r.kl)
            << "\nkl_variance = " << format_double(kl_variance_gaussian(w1, w2))
            << "\nrenyi = " << format_double(r.renyi_alpha)
            << "\nhellinger_sq = " << format_double(r.hellinger_sq)
            << "\nfrobenius_sq = " << format_double(r.frobenius_sq) << '\n';
  return 0;
}

struct GridArgs {
  std::size_t reps = 50, iters = 1100, burnin = 100;
  int jobs = 0;
  std::optional<std::uint64_t> seed;
};

GridOptions grid_options(const GridArgs& g, DiagMode mode) {
  GridOptions o;
  o.n_iter = g.iters;
  o.burn_in = g.burnin;
  o.diag_mode = mode;
  o.jobs = g.jobs;
  o.master_seed = g.seed ? g.seed : env_seed();
  if (g.reps < 1) throw ConfigError("--reps must be positive");
  if (g.burnin >= g.iters) throw ConfigError("--burnin must be smaller than --iters");
  return o;
}

struct TableArgs {
  GridArgs grid;
  std::string out, summary_out;
  std::vector<double> alphas{1.0, 0.9, 0.5, 0.1};
  std::vector<std::string> scenarios{"dense_gaussian", "dense_mvt3", "sparse_gaussian", "sparse_mvt3"};
};

int cmd_reproduce(const TableArgs& a) {
  std::vector<Scenario> scns;
  for (const auto& name : a.scenarios) {
    if (name == "dense_gaussian") scns.push_back(table1_dense(false));
    else if (name == "dense_mvt3") scns.push_back(table1_dense(true));
    else if (name == "sparse_gaussian") scns.push_back(table1_sparse(false));
    else if (name == "sparse_mvt3") scns.push_back(table1_sparse(true));
    else throw ConfigError("unknown scenario '" + name + "'");
  }
  const GridOptions opts = grid_options(a.grid, DiagMode::Free);
  auto results_os = open_out(a.out);
  const std::string summary_path = a.summary_out.empty() ? default_summary_path(a.out) : a.summary_out;
  auto summary_os = open_out(summary_path);

  const auto results = run_grid(scns, a.alphas, a.grid.reps, opts);
  const auto rows = aggregate(results);
  write_results_csv(results_os, results);
  write_summary_csv(summary_os, rows);
  print_summary_table(std::cout, rows);

  std::size_t failed = 0;
  for (const auto& r : results)
    if (!r.ok) {
      ++failed;
      std::cerr << "fghs: " << r.scenario << " alpha=" << format_double(r.alpha)
                << " replicate=" << r.replicate << ": " << r.message << '\n';
    }
  return failed ? kExitFailure : 0;
}

struct ConcentrationArgs {
  GridArgs grid;
  std::string scenario, out, diag_mode = "fixed";
  std::vector<long long> n_list{30, 60, 120, 240};
  double alpha = 0.9;
};

int cmd_concentration(const ConcentrationArgs& a) {
  const Scenario base = as_input([&] { return load_scenario(a.scenario); });
  const GridOptions opts = grid_options(a.grid, as_input([&] { return parse_diag_mode(a.diag_mode); }));
  if (!(a.alpha > 0.0 && a.alpha <= 1.0)) throw ConfigError("--alpha must lie in (0, 1]");
  auto os = open_out(a.out);
  const std::vector<Eigen::Index> ns(a.n_list.begin(), a.n_list.end());
  const TrendTable t = concentration_sweep(base, ns, a.grid.reps, a.alpha, opts);
  write_trend_csv(os, t);

  std::size_t dropped = 0;
  for (const auto& r : t.rows) {
    dropped += r.dropped;
    std::cout << "n = " << r.n << "  mean_frob_sq = " << format_double(r.mean_frob_sq) << '\n';
  }
  std::cout << "log_log_slope = " << format_double(t.log_log_slope)
            << "\nstrictly_decreasing = " << (t.strictly_decreasing ? "true" : "false") << '\n';
  return dropped ? kExitFailure : 0;
}

void add_grid_options(CLI::App* sub, GridArgs& g) {
  sub->add_option("--iters", g.iters, "Gibbs iterations per chain")->capture_default_str();
  sub->add_option("--burnin", g.burnin, "Discarded leading iterations")->capture_default_str();
  sub->add_option("--jobs", g.jobs, "Worker threads (0 = all cores)")->capture_default_str();
  sub->add_option("--seed", g.seed, "Master seed for every scenario (overrides FGHS_SEED)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tempered graphical horseshoe estimation of precision matrices"};
  app.require_subcommand(1);
  std::function<int()> run;

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Draw one replicate data set from a scenario");
  g->add_option("--scenario", gen.scenario, "Scenario file")->required();
  g->add_option("--replicate", gen.replicate, "Replicate index")->required();
  g->add_option("--out", gen.out, "Data output (n p header, one row per observation)")->required();
  g->add_option("--truth-out", gen.truth_out, "Also write the true precision matrix");
  g->callback([&] { run = [&] { return cmd_generate(gen); }; });

  EstimateArgs est;
  auto* e = app.add_subcommand("estimate", "Posterior mean precision matrix from data");
  e->add_option("--data", est.data, "Data file")->required();
  e->add_option("--alpha", est.alpha, "Tempering exponent in (0, 1]")->capture_default_str();
  e->add_option("--iters", est.iters, "Gibbs iterations")->capture_default_str();
  e->add_option("--burnin", est.burnin, "Discarded leading iterations")->capture_default_str();
  e->add_option("--thin", est.thin, "Keep every k-th post-burn-in draw")->capture_default_str();
  e->add_option("--diag-mode", est.diag_mode, "free or fixed")
      ->check(CLI::IsMember({"free", "fixed"}))
      ->capture_default_str();
  e->add_option("--seed", est.seed, "Chain seed (default: FGHS_SEED, else 0)");
  e->add_option("--out", est.out, "Estimate output")->required();
  e->add_option("--psd-out", est.psd_out, "Also write the PSD-projected estimate");
  e->callback([&] { run = [&] { return cmd_estimate(est); }; });

  DivergeArgs div;
  auto* d = app.add_subcommand("diverge", "Divergences between two Gaussian precision matrices");
  d->add_option("--a", div.a, "First precision matrix")->required();
  d->add_option("--b", div.b, "Second precision matrix")->required();
  d->add_option("--alpha", div.alpha, "Renyi order in (0, 1)")->capture_default_str();
  d->callback([&] { run = [&] { return cmd_diverge(div); }; });

  TableArgs tab;
  auto* t = app.add_subcommand("reproduce-table1", "Replicate grid over the simulation settings");
  t->add_option("--reps", tab.grid.reps, "Replicates per cell")->capture_default_str();
  t->add_option("--out", tab.out, "Per-replicate results CSV")->required();
  t->add_option("--summary-out", tab.summary_out, "Aggregate CSV (default: <out>_summary.csv)");
  t->add_option("--alphas", tab.alphas, "Comma-separated alpha values")->delimiter(',');
  t->add_option("--scenarios", tab.scenarios,
                "Subset of dense_gaussian, dense_mvt3, sparse_gaussian, sparse_mvt3")
      ->delimiter(',');
  add_grid_options(t, tab.grid);
  t->callback([&] { run = [&] { return cmd_reproduce(tab); }; });

  ConcentrationArgs con;
  auto* c = app.add_subcommand("concentration", "Error against sample size at a fixed truth");
  c->add_option("--scenario", con.scenario, "Scenario file")->required();
  c->add_option("--n-list", con.n_list, "Increasing sample sizes")->delimiter(',');
  c->add_option("--reps", con.grid.reps, "Replicates per sample size")->capture_default_str();
  c->add_option("--alpha", con.alpha, "Tempering exponent")->capture_default_str();
  c->add_option("--diag-mode", con.diag_mode, "free or fixed")
      ->check(CLI::IsMember({"free", "fixed"}))
      ->capture_default_str();
  c->add_option("--out", con.out, "Trend CSV")->required();
  add_grid_options(c, con.grid);
  c->callback([&] { run = [&] { return cmd_concentration(con); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int rc = app.exit(err);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    return run();
  } catch (const ConfigError& err) {
    std::cerr << "fghs: " << err.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& err) {
    std::cerr << "fghs: " << err.what() << '\n';
    return kExitFailure;
  }
}
