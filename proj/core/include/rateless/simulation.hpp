#pragma once

#include <cstddef>
#include <vector>

#include "rateless/config.hpp"
#include "rateless/metrics.hpp"
#include "rateless/netsim.hpp"

namespace rateless {

struct RunOptions {
  unsigned threads = 0;      // 0: one per hardware thread
  bool diagnostics = false;  // run the per-trial invariant checks
};

// Trial (r, f) is realization r under fading draw f; trial_id = r * fading_trials + f.
// Realization r is seeded from (master_seed, Geometry, {r}), its fading from
// (master_seed, Fading, {r, f}).
struct TrialRecord {
  std::size_t trial_id = 0;
  std::vector<LinkOutcome> outcomes;
};

// Diagnostic totals over all trials.
struct DiagnosticsSummary {
  std::size_t spot_checks = 0;
  double max_spot_check_rel_error = 0.0;
  std::size_t monotonicity_violations = 0;
  std::size_t average_below_instant_violations = 0;
  std::size_t rate_monotonicity_violations = 0;
};

struct SimulationResult {
  std::vector<TrialRecord> trials;  // ordered by trial_id
  CcdfCurve ccdf;                   // pooled over every pair of every trial
  DiagnosticsSummary diagnostics;
};

// Runs config.mode at N = config.n_max for every trial.
SimulationResult simulate(const SimConfig& config, const RunOptions& options = {});

// Pooled typical-user CCDF of T for config.mode.
CcdfCurve estimate_typical_ccdf(const SimConfig& config, const RunOptions& options = {});

struct SchemePoint {
  int n = 0;
  std::size_t samples = 0;
  std::size_t successes = 0;
  double ps = 0.0;
  double mean_T = 0.0;  // N for fixed rate
  double rate = 0.0;    // fixed: (K / N) ps; rateless: K ps / mean_T
};

struct PairedSweepPoint {
  SchemePoint fixed;
  SchemePoint rateless;
  // Pairs that decoded at fixed rate but not rateless on the same draw.
  std::size_t coupling_violations = 0;
  double ps_fixed_analytic = 0.0;
  double ps_rateless_lb_analytic = 0.0;
  double rate_fixed_analytic = 0.0;
  double rate_rateless_analytic = 0.0;  // estimate, not a bound
  double mu = 0.0;
};

struct PairedSweep {
  std::vector<PairedSweepPoint> points;  // in config.n_grid order
  int n_f = 0;                           // argmax of simulated fixed rate
  int n_r = 0;                           // argmax of simulated rateless rate
  double max_rate_fixed = 0.0;
  double max_rate_rateless = 0.0;
  int n_f_analytic = 0;
  int n_r_analytic = 0;
  std::size_t coupling_violations = 0;
};

// Both schemes on identical (realization, fading) draws for every N in
// config.n_grid. A rateless link's decode slot does not depend on N, so one
// RatelessAck run at max(n_grid) yields min(T, N) for every smaller N.
PairedSweep run_paired_sweep(const SimConfig& config, const RunOptions& options = {});
std::vector<SchemePoint> run_fixed_rate_sweep(const SimConfig& config,
                                              const RunOptions& options = {});
std::vector<SchemePoint> run_rateless_sweep(const SimConfig& config,
                                            const RunOptions& options = {});

struct ContinuousPoint {
  int n = 0;
  double mean_T = 0.0;
  double gbar_r = 0.0;  // N / mean_T
  double gbar_r_analytic = 0.0;
};

struct ContinuousResult {
  CcdfCurve ccdf;  // at config.n_max
  std::vector<ContinuousPoint> points;  // in config.n_grid order
};

// Continuous mode, simulated once at max(n_max, max(n_grid)) and truncated
// per N.
ContinuousResult run_continuous_mode(const SimConfig& config, const RunOptions& options = {});

}  // namespace rateless
