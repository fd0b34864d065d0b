#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rateless/analytics.hpp"
#include "rateless/geometry.hpp"

namespace rateless {

struct WilsonInterval {
  double lower = 0.0;
  double upper = 1.0;
};

// Wilson score interval for a binomial proportion.
WilsonInterval wilson_interval(std::size_t hits, std::size_t trials, double z = 1.96);

// Empirical P(T > t) on the slot grid t = 1..N with 95% Wilson intervals.
struct CcdfCurve {
  std::vector<double> t;
  std::vector<double> values;
  std::vector<double> lower;
  std::vector<double> upper;
  std::string label;
  std::size_t samples = 0;
};

// Throws SampleSizeError below `min_samples` and DomainError for T outside 1..N.
CcdfCurve empirical_ccdf(std::span<const int> t_slots, int n_max, std::string label,
                         std::size_t min_samples = 100);

struct GammaFit {
  double shape = 0.0;
  double scale = 0.0;
  double ks_distance = 0.0;
  std::size_t samples = 0;
};

// Method-of-moments gamma fit (shape = m^2 / v, scale = v / m, population
// variance) and the exact sup-norm distance between the sample ECDF and the
// fitted CDF, taken over both one-sided limits at every sample point.
// Needs at least 100 positive samples; zero variance is an error.
GammaFit fit_gamma(std::span<const double> samples);

// Sup-norm distance between the ECDF of `samples` and a continuous CDF.
double ks_distance(std::span<const double> samples, double shape, double scale);

enum class DiffKind {
  Bound,  // analytic is an upper bound on the simulated CCDF
  Exact,  // analytic should match the simulated CCDF
};

struct CurveDiffPoint {
  double t = 0.0;
  double simulated = 0.0;
  double analytic = 0.0;
  double half_width = 0.0;  // (upper - lower) / 2 of the simulated interval
  bool inside_ci = false;
  bool bound_respected = false;
};

struct CurveDiff {
  std::vector<CurveDiffPoint> points;
  double fraction_inside_ci = 0.0;
  double fraction_bound_respected = 0.0;
  double mean_abs_deviation = 0.0;
  double max_abs_deviation = 0.0;
};

// Point-by-point comparison on a shared grid. Slack at each point is
// ci_multiplier * half_width + abs_tol. inside_ci: |sim - analytic| <= slack;
// bound_respected: sim <= analytic + slack. Throws DomainError when grids differ.
CurveDiff curve_diff(const CcdfCurve& simulated, const AnalyticCurve& analytic, DiffKind kind,
                     double ci_multiplier = 2.0, double abs_tol = 0.0);

// Mean absolute deviation restricted to grid points with t > t_min.
double mean_abs_deviation_above(const CurveDiff& diff, double t_min);

// Spearman rank correlation with average ranks for ties. NaN if either input
// is constant.
double spearman_rank_correlation(std::span<const double> x, std::span<const double> y);

struct PerUserRecord {
  std::size_t pair_id = 0;
  double distance = 0.0;
  double ps_rateless = 0.0;
  double ps_fixed = 0.0;
  double mean_T = 0.0;
  double rate_rateless = 0.0;  // K * ps_rateless / mean_T
  double rate_fixed = 0.0;     // (K / N) * ps_fixed
  double gain_GR = 0.0;        // +inf when censored
  double gain_GS = 0.0;        // +inf when censored
  double gain_sd = 0.0;        // paired-bootstrap SD of gain_GR over finite replicates
  bool censored = false;       // no fixed-rate success in any fading trial
};

struct PerUserOptions {
  int fading_trials = 2000;
  std::uint64_t seed = 1;
  int bootstrap_resamples = 200;
  unsigned threads = 0;
};

struct PerUserReport {
  std::vector<PerUserRecord> records;
  // Fading trials in which some pair decoded at fixed rate but not rateless;
  // zero by the coupling argument.
  std::size_t coupling_violations = 0;
  std::size_t censored = 0;
};

// Holds the realization fixed and averages over fading only. Every fading draw
// runs the RatelessAck and FixedRate schemes on the same gains. Draw f uses
// derive_seed(seed, Fading, {0, f}); bootstrap replicate b uses
// derive_seed(seed, Bootstrap, {b}). Throws SampleSizeError below 500 trials.
PerUserReport per_user_report(const NetworkRealization& net, const CodingParams& params,
                              const PerUserOptions& options);

}  // namespace rateless
