// Acceptance suite: one PASS/FAIL line per criterion; exit status is the
// number of failed criteria. Every tolerance and run size is pinned here.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>
#include <fmt/format.h>

#include "../oracles/hyp2f1_series.hpp"
#include "rateless/analytics.hpp"
#include "rateless/experiments.hpp"
#include "rateless/metrics.hpp"
#include "rateless/random.hpp"
#include "rateless/simulation.hpp"
#include "rateless/specfun.hpp"

namespace {

using namespace rateless;
using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kSeed = 1;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<double> logspace(double lo_exp, double hi_exp, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(std::pow(10.0, lo_exp + (hi_exp - lo_exp) * i / (n - 1)));
  return out;
}

const std::vector<double> kDeltas = {0.4, 0.5, 2.0 / 3.0, 0.75};

double rel_err(double v, double ref) { return std::abs(v - ref) / std::abs(ref); }

// --- 1 -------------------------------------------------------------------

Outcome special_function_oracle() {
  constexpr double kTol = 1e-9;
  constexpr double kBudget = 5.0;
  const auto start = Clock::now();
  double worst_series = 0.0;
  double worst_closed = 0.0;
  for (double d : kDeltas) {
    for (double x : logspace(-3, 3, 25)) {
      worst_series = std::max(worst_series, rel_err(hyp2f1_neg_delta(Delta(d), x),
                                                     oracle::hyp2f1_series(1.0, -d, 1.0 - d, -x)));
      worst_series = std::max(worst_series, rel_err(hyp2f1_pos_delta(Delta(d), x),
                                                     oracle::hyp2f1_series(1.0, d, 1.0 + d, -x)));
    }
  }
  for (double x : logspace(-3, 3, 25)) {
    const double r = std::sqrt(x);
    worst_closed = std::max(worst_closed, rel_err(hyp2f1_neg_delta(Delta(0.5), x), 1.0 + r * std::atan(r)));
    worst_closed = std::max(worst_closed, rel_err(hyp2f1_pos_delta(Delta(0.5), x), std::atan(r) / r));
  }
  const double elapsed = seconds_since(start);
  return {worst_series <= kTol && worst_closed <= kTol && elapsed < kBudget,
          fmt::format("max rel err vs series {:.2e}, vs alpha=4 closed forms {:.2e} (tol {:.0e}); "
                      "{:.2f} s (limit {} s)",
                      worst_series, worst_closed, kTol, elapsed, kBudget)};
}

// --- 2 -------------------------------------------------------------------

Outcome hypergeometric_identity() {
  constexpr double kTol = 1e-9;
  constexpr double kBudget = 5.0;
  const auto start = Clock::now();
  double worst = 0.0;
  for (double d : kDeltas) {
    for (double beta : logspace(-3, 3, 25)) {
      const double lhs =
          d * beta / (1.0 - d) * oracle::hyp2f1_series(1.0, 1.0 - d, 2.0 - d, -beta) + 1.0;
      worst = std::max(worst, rel_err(hyp2f1_neg_delta(Delta(d), beta), lhs));
    }
  }
  const double elapsed = seconds_since(start);
  return {worst <= kTol && elapsed < kBudget,
          fmt::format("max rel err {:.2e} (tol {:.0e}); {:.2f} s (limit {} s)", worst, kTol,
                      elapsed, kBudget)};
}

// --- 3 -------------------------------------------------------------------

Outcome mu_dual_path() {
  constexpr double kTol = 1e-8;
  constexpr double kBudget = 10.0;
  const auto start = Clock::now();
  double worst = 0.0;
  bool in_range = true;
  std::string values;
  for (int n : {50, 60, 75}) {
    const CodingParams p{75.0, n, 4.0, 1.0};
    const double general = mean_interferer_time_mu(p);
    const double arctan = alpha4::mean_interferer_time_mu(p);
    worst = std::max(worst, std::abs(general - arctan));
    in_range = in_range && general > 0.0 && general < n;
    values += fmt::format(" mu({})={:.6f}", n, general);
  }
  const double elapsed = seconds_since(start);
  return {worst <= kTol && in_range && elapsed < kBudget,
          fmt::format("max |general - arctan| {:.2e} (tol {:.0e});{}; {:.2f} s (limit {} s)", worst,
                      kTol, values, elapsed, kBudget)};
}

// --- 4 -------------------------------------------------------------------

Outcome analytic_ordering() {
  constexpr double kSlack = 1e-9;
  constexpr double kBudget = 30.0;
  const auto start = Clock::now();
  std::size_t checks = 0;
  std::vector<std::string> failures;
  for (double alpha : {3.0, 3.5, 4.0}) {
    for (int n : {50, 60, 75}) {
      const CodingParams p{75.0, n, alpha, 1.0};
      const auto grid = default_t_grid(n, 400);
      const auto thm1 = analytic_curve(CurveKind::CcdfUbTheorem1, p, grid);
      const auto thin = analytic_curve(CurveKind::CcdfUbThinning, p, grid);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        ++checks;
        if (thin.values[i] > thm1.values[i] + kSlack) {
          failures.push_back(fmt::format("thinning>thm1 a={} N={} t={}", alpha, n, grid[i]));
        }
      }
      const auto g = gains_report(p);  // throws if 1 <= gbar_r <= gr fails
      checks += 4;
      if (!(ps_rateless_lb(p, g.mu) > ps_fixed(p))) {
        failures.push_back(fmt::format("ps_rateless_lb<=ps_fixed a={} N={}", alpha, n));
      }
      if (!(g.gbar_r >= 1.0 - kSlack && g.gbar_r <= g.gr + kSlack)) {
        failures.push_back(fmt::format("gain ordering a={} N={}", alpha, n));
      }
      if (!(g.sir_gain_gamma > 1.0) || std::abs(g.sir_gain_gamma - n / g.mu) > kSlack) {
        failures.push_back(fmt::format("Gamma a={} N={}", alpha, n));
      }
    }
  }
  const double elapsed = seconds_since(start);
  return {failures.empty() && elapsed < kBudget,
          fmt::format("{} checks, {} violations{}; {:.2f} s (limit {} s)", checks, failures.size(),
                      failures.empty() ? "" : " first: " + failures.front(), elapsed, kBudget)};
}

// --- 5 -------------------------------------------------------------------

SimConfig continuous_config() {
  SimConfig c;
  c.alpha = 4.0;
  c.n_max = 50;
  c.window_side = 20.0;
  c.mode = Mode::Continuous;
  c.realizations = 60;
  c.fading_trials = 1;
  c.master_seed = kSeed;
  c.n_grid = {50};
  return c;
}

Outcome continuous_exactness() {
  constexpr double kTol = 0.03;
  constexpr std::size_t kMinSamples = 20000;
  constexpr double kBudget = 300.0;
  const auto start = Clock::now();
  const auto config = continuous_config();
  const auto sim = simulate(config);
  const auto params = config.coding();
  double worst = 0.0;
  double worst_t = 0.0;
  // Head: slots where at least half the links are still decoding.
  double head_bias = 0.0;
  std::size_t head_points = 0;
  for (std::size_t i = 0; i < sim.ccdf.t.size(); ++i) {
    const double t = sim.ccdf.t[i];
    const double diff = ccdf_continuous(params, t) - sim.ccdf.values[i];
    if (std::abs(diff) > worst) {
      worst = std::abs(diff);
      worst_t = t;
    }
    if (sim.ccdf.values[i] >= 0.5) {
      head_bias += diff;
      ++head_points;
    }
  }
  head_bias /= std::max<std::size_t>(head_points, 1);
  const double elapsed = seconds_since(start);
  const bool pass = sim.ccdf.samples >= kMinSamples && worst <= kTol && head_bias >= 0.0 &&
                    elapsed < kBudget;
  return {pass, fmt::format("{} samples; max |analytic - empirical| {:.4f} at t={} (tol {}); "
                            "mean signed head bias (analytic - empirical, {} slots) {:+.4f} "
                            "(must be >= 0); {:.1f} s (limit {} s)",
                            sim.ccdf.samples, worst, worst_t, kTol, head_points, head_bias,
                            elapsed, kBudget)};
}

// --- 6 and 7 -------------------------------------------------------------

SimConfig bound_config() {
  SimConfig c;
  c.alpha = 3.0;
  c.n_max = 200;
  c.window_side = 20.0;
  c.mode = Mode::RatelessAck;
  c.realizations = 100;
  c.fading_trials = 1;
  c.master_seed = kSeed;
  c.n_grid = {200};
  return c;
}

struct BoundRun {
  SimulationResult sim;
  double seconds = 0.0;
};

const BoundRun& bound_run() {
  static const BoundRun run = [] {
    const auto start = Clock::now();
    BoundRun r;
    r.sim = simulate(bound_config(), {0, true});
    r.seconds = seconds_since(start);
    return r;
  }();
  return run;
}

Outcome bound_respect() {
  constexpr double kCiMultiplier = 2.0;
  constexpr double kMinFraction = 0.99;
  constexpr double kBudget = 600.0;
  const auto start = Clock::now();
  const auto& run = bound_run();
  const auto config = bound_config();
  const auto params = config.coding();
  const double mu = mean_interferer_time_mu(params);
  const auto thm1 = analytic_curve(CurveKind::CcdfUbTheorem1, params, run.sim.ccdf.t);
  const auto thin = analytic_curve(CurveKind::CcdfUbThinning, params, run.sim.ccdf.t);
  const auto diff_thm1 = curve_diff(run.sim.ccdf, thm1, DiffKind::Bound, kCiMultiplier);
  const auto diff_thin = curve_diff(run.sim.ccdf, thin, DiffKind::Bound, kCiMultiplier);
  const double mad_thm1 = mean_abs_deviation_above(diff_thm1, mu);
  const double mad_thin = mean_abs_deviation_above(diff_thin, mu);
  const auto& d = run.sim.diagnostics;
  const bool invariants = d.monotonicity_violations == 0 && d.average_below_instant_violations == 0 &&
                          d.rate_monotonicity_violations == 0 && d.max_spot_check_rel_error <= 1e-9;
  const double elapsed = run.seconds + seconds_since(start);
  const bool pass = diff_thm1.fraction_bound_respected >= kMinFraction && mad_thin < mad_thm1 &&
                    invariants && elapsed < kBudget;
  return {pass,
          fmt::format("{} samples; bound respected at {:.2f}% of {} slots (need >= {}%); "
                      "MAD for t > mu={:.2f}: thinning {:.4f} vs CCDF upper bound {:.4f}; "
                      "engine invariants {} ({} spot checks, max rel err {:.1e}); "
                      "{:.1f} s (limit {} s)",
                      run.sim.ccdf.samples, 100.0 * diff_thm1.fraction_bound_respected,
                      diff_thm1.points.size(), 100.0 * kMinFraction, mu, mad_thin, mad_thm1,
                      invariants ? "hold" : "VIOLATED", d.spot_checks, d.max_spot_check_rel_error,
                      elapsed, kBudget)};
}

Outcome gamma_fit_claim() {
  constexpr double kMaxKs = 0.03;
  constexpr std::size_t kMinSamples = 10000;
  const auto& run = bound_run();
  std::vector<double> decoded;
  std::size_t censored = 0;
  for (const auto& trial : run.sim.trials) {
    for (const auto& o : trial.outcomes) {
      if (o.success) {
        decoded.push_back(o.t_slots);
      } else {
        ++censored;
      }
    }
  }
  const auto fit = fit_gamma(decoded);
  // Lattice variant: T is slot-valued, so compare P(T <= k) with the fitted
  // CDF at the integers only. Reported for diagnosis, not gated.
  std::vector<std::size_t> count_at(static_cast<std::size_t>(bound_config().n_max) + 1, 0);
  for (double t : decoded) ++count_at[static_cast<std::size_t>(t)];
  double lattice = 0.0;
  std::size_t cumulative = 0;
  for (std::size_t k = 1; k < count_at.size(); ++k) {
    cumulative += count_at[k];
    const double ecdf = static_cast<double>(cumulative) / static_cast<double>(decoded.size());
    const double model = boost::math::gamma_p(fit.shape, static_cast<double>(k) / fit.scale);
    lattice = std::max(lattice, std::abs(ecdf - model));
  }
  const bool pass = decoded.size() >= kMinSamples && fit.ks_distance <= kMaxKs;
  return {pass, fmt::format("{} decoded samples ({} censored at N=200); MoM gamma shape {:.3f} "
                            "scale {:.3f}; KS {:.4f} (need <= {}); lattice KS {:.4f}",
                            decoded.size(), censored, fit.shape, fit.scale, fit.ks_distance, kMaxKs,
                            lattice)};
}

// --- 8 -------------------------------------------------------------------

SimConfig sweep_config() {
  SimConfig c;
  c.alpha = 3.0;
  c.n_max = 120;
  c.window_side = 20.0;
  c.realizations = 50;
  c.fading_trials = 1;
  c.master_seed = kSeed;
  c.n_grid = {10, 20, 30, 40, 50, 60, 70, 80, 90, 100, 110, 120};
  return c;
}

Outcome scheme_comparison() {
  constexpr double kBudget = 900.0;
  const auto start = Clock::now();
  const auto sweep = run_paired_sweep(sweep_config());
  bool dominance = true;
  for (const auto& p : sweep.points) dominance = dominance && p.rateless.ps >= p.fixed.ps;
  const double elapsed = seconds_since(start);
  const bool pass = dominance && sweep.coupling_violations == 0 && sweep.n_r >= sweep.n_f &&
                    sweep.max_rate_rateless > sweep.max_rate_fixed && elapsed < kBudget;
  return {pass, fmt::format("rateless p_s >= fixed p_s at all {} N: {}; coupling violations {}; "
                            "N_f={} N_r={} (analytic {} / {}); max rate fixed {:.4f} rateless "
                            "{:.4f}; {:.1f} s (limit {} s)",
                            sweep.points.size(), dominance ? "yes" : "NO",
                            sweep.coupling_violations, sweep.n_f, sweep.n_r, sweep.n_f_analytic,
                            sweep.n_r_analytic, sweep.max_rate_fixed, sweep.max_rate_rateless,
                            elapsed, kBudget)};
}

// --- 9 -------------------------------------------------------------------

SimConfig peruser_config(double alpha, int n) {
  SimConfig c;
  c.alpha = alpha;
  c.n_max = n;
  c.window_side = 20.0;
  c.fading_trials = 2000;
  c.master_seed = kSeed;
  c.n_grid = {n};
  return c;
}

Outcome per_user_claim() {
  constexpr double kSdMultiplier = 2.0;
  constexpr double kBudget = 900.0;
  const auto start = Clock::now();
  bool pass = true;
  std::string detail;
  for (const auto& [alpha, n] : {std::pair{3.0, 60}, std::pair{4.0, 50}}) {
    const auto config = peruser_config(alpha, n);
    auto rng = make_rng(config.master_seed, Stream::Geometry, {0});
    const auto net = NetworkRealization::generate(config.intensity, config.window(), alpha, rng);
    PerUserOptions options;
    options.fading_trials = config.fading_trials;
    options.seed = config.master_seed;
    const auto report = per_user_report(net, config.coding(), options);

    std::size_t gs_violations = 0;
    std::size_t gr_violations = 0;
    std::vector<double> d;
    std::vector<double> g;
    double min_gain = std::numeric_limits<double>::infinity();
    for (const auto& r : report.records) {
      gs_violations += r.ps_rateless < r.ps_fixed;
      if (r.censored) continue;
      gr_violations += r.gain_GR < 1.0 - kSdMultiplier * r.gain_sd;
      min_gain = std::min(min_gain, r.gain_GR);
      d.push_back(r.distance);
      g.push_back(r.gain_GR);
    }
    const double rho = spearman_rank_correlation(d, g);
    const bool ok = report.coupling_violations == 0 && gs_violations == 0 && gr_violations == 0 &&
                    rho < 0.0;
    pass = pass && ok;
    detail += fmt::format("[alpha={} N={}: {} pairs, {} censored, G_S<1: {}, G_R<1-2sd: {}, "
                          "min G_R {:.3f}, Spearman(D, G_R) {:+.3f}] ",
                          alpha, n, report.records.size(), report.censored, gs_violations,
                          gr_violations, min_gain, rho);
  }
  const double elapsed = seconds_since(start);
  pass = pass && elapsed < kBudget;
  return {pass, detail + fmt::format("{:.1f} s (limit {} s)", elapsed, kBudget)};
}

// --- 10 ------------------------------------------------------------------

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "rateless_acceptance_determinism";
  auto with_dir = [&](SimConfig c, const std::string& sub) {
    c.output_dir = (dir / sub).string();
    return c;
  };
  auto bound = with_dir(bound_config(), "c6");
  auto sweep = with_dir(sweep_config(), "c8");
  sweep.n_max = 60;
  const std::vector<std::function<std::vector<std::filesystem::path>(unsigned)>> commands = {
      [&](unsigned t) { return cmd_simulate(with_dir(continuous_config(), "c5"), {t, false}); },
      [&](unsigned t) { return cmd_simulate(bound, {t, false}); },
      [&](unsigned t) { return cmd_compare(sweep, {t, false}); },
      [&](unsigned t) { return cmd_peruser(with_dir(peruser_config(3.0, 60), "c9a"), {t, false}); },
      [&](unsigned t) { return cmd_peruser(with_dir(peruser_config(4.0, 50), "c9b"), {t, false}); },
  };
  std::size_t files = 0;
  std::size_t bytes = 0;
  std::vector<std::string> mismatched;
  for (const auto& command : commands) {
    std::vector<std::string> first;
    const auto paths = command(1);
    for (const auto& p : paths) first.push_back(slurp(p));
    const auto again = command(4);
    for (std::size_t i = 0; i < again.size(); ++i) {
      ++files;
      bytes += first[i].size();
      if (slurp(again[i]) != first[i]) mismatched.push_back(again[i].filename().string());
    }
  }
  std::filesystem::remove_all(dir);
  return {mismatched.empty() && files > 0,
          fmt::format("{} CSVs ({} bytes) from criteria 5-9 rerun with 1 and 4 threads; {} differ{}",
                      files, bytes, mismatched.size(),
                      mismatched.empty() ? "" : " (first: " + mismatched.front() + ")")};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "special-function oracle equivalence", special_function_oracle},
      {2, "hypergeometric identity", hypergeometric_identity},
      {3, "mu dual-path agreement", mu_dual_path},
      {4, "analytic ordering suite", analytic_ordering},
      {5, "continuous-mode exactness", continuous_exactness},
      {6, "bound respect and thinning tail", bound_respect},
      {7, "gamma-fit KS distance", gamma_fit_claim},
      {8, "paired scheme comparison", scheme_comparison},
      {9, "per-user gains", per_user_claim},
      {10, "determinism across thread counts", determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    fmt::print("{} criterion {:>2} ({}): {}\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail);
    std::fflush(stdout);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed;
}
