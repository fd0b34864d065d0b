#include "rateless/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include <boost/math/special_functions/gamma.hpp>
#include <fmt/format.h>

#include "rateless/errors.hpp"
#include "rateless/netsim.hpp"
#include "rateless/parallel.hpp"
#include "rateless/random.hpp"

namespace rateless {

namespace {

constexpr std::size_t kMinGammaSamples = 100;
constexpr int kMinPerUserTrials = 500;
constexpr double kGridTolerance = 1e-9;

std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

WilsonInterval wilson_interval(std::size_t hits, std::size_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  if (hits > trials) throw DomainError("wilson_interval: hits exceed trials");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(hits) / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
  const double half = z / (1.0 + z2 / n) * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

CcdfCurve empirical_ccdf(std::span<const int> t_slots, int n_max, std::string label,
                         std::size_t min_samples) {
  if (n_max < 1) throw DomainError("empirical_ccdf: n_max must be >= 1");
  if (t_slots.size() < min_samples) {
    throw SampleSizeError(fmt::format("empirical_ccdf: {} pooled samples, at least {} required",
                                      t_slots.size(), min_samples));
  }
  // counts[t] = #{T == t}
  std::vector<std::size_t> counts(static_cast<std::size_t>(n_max) + 1, 0);
  for (int t : t_slots) {
    if (t < 1 || t > n_max) {
      throw DomainError(fmt::format("empirical_ccdf: T = {} outside 1..{}", t, n_max));
    }
    ++counts[static_cast<std::size_t>(t)];
  }
  CcdfCurve curve;
  curve.label = std::move(label);
  curve.samples = t_slots.size();
  std::size_t above = t_slots.size();
  for (int t = 1; t <= n_max; ++t) {
    above -= counts[static_cast<std::size_t>(t)];
    const auto ci = wilson_interval(above, curve.samples);
    curve.t.push_back(t);
    curve.values.push_back(static_cast<double>(above) / static_cast<double>(curve.samples));
    curve.lower.push_back(ci.lower);
    curve.upper.push_back(ci.upper);
  }
  return curve;
}

double ks_distance(std::span<const double> samples, double shape, double scale) {
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double model = boost::math::gamma_p(shape, sorted[i] / scale);
    // ECDF jumps from i/n (left limit) to j/n at this value.
    sup = std::max({sup, std::abs(model - static_cast<double>(i) / n),
                    std::abs(model - static_cast<double>(j) / n)});
    i = j;
  }
  return sup;
}

GammaFit fit_gamma(std::span<const double> samples) {
  if (samples.size() < kMinGammaSamples) {
    throw SampleSizeError(fmt::format("fit_gamma: {} samples, at least {} required",
                                      samples.size(), kMinGammaSamples));
  }
  const double n = static_cast<double>(samples.size());
  double mean = 0.0;
  for (double x : samples) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("fit_gamma: samples must be positive");
    mean += x;
  }
  mean /= n;
  double var = 0.0;
  for (double x : samples) var += (x - mean) * (x - mean);
  var /= n;
  if (!(var > 0.0)) throw DomainError("fit_gamma: zero sample variance");

  GammaFit fit;
  fit.shape = mean * mean / var;
  fit.scale = var / mean;
  fit.samples = samples.size();
  fit.ks_distance = ks_distance(samples, fit.shape, fit.scale);
  return fit;
}

CurveDiff curve_diff(const CcdfCurve& simulated, const AnalyticCurve& analytic, DiffKind kind,
                     double ci_multiplier, double abs_tol) {
  const std::size_t n = simulated.t.size();
  if (analytic.t_grid.size() != n || analytic.values.size() != n || simulated.values.size() != n ||
      simulated.lower.size() != n || simulated.upper.size() != n) {
    throw DomainError("curve_diff: grid sizes differ");
  }
  CurveDiff diff;
  if (n == 0) return diff;
  std::size_t inside = 0;
  std::size_t respected = 0;
  double abs_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(simulated.t[i] - analytic.t_grid[i]) > kGridTolerance) {
      throw DomainError(fmt::format("curve_diff: grid mismatch at index {} ({} vs {})", i,
                                    simulated.t[i], analytic.t_grid[i]));
    }
    CurveDiffPoint p;
    p.t = simulated.t[i];
    p.simulated = simulated.values[i];
    p.analytic = analytic.values[i];
    p.half_width = 0.5 * (simulated.upper[i] - simulated.lower[i]);
    const double slack = ci_multiplier * p.half_width + abs_tol;
    const double deviation = std::abs(p.simulated - p.analytic);
    p.inside_ci = deviation <= slack;
    p.bound_respected = p.simulated <= p.analytic + slack;
    inside += p.inside_ci;
    respected += p.bound_respected;
    abs_sum += deviation;
    diff.max_abs_deviation = std::max(diff.max_abs_deviation, deviation);
    diff.points.push_back(p);
  }
  (void)kind;  // both flags are always reported; kind selects which one callers gate on
  diff.fraction_inside_ci = static_cast<double>(inside) / static_cast<double>(n);
  diff.fraction_bound_respected = static_cast<double>(respected) / static_cast<double>(n);
  diff.mean_abs_deviation = abs_sum / static_cast<double>(n);
  return diff;
}

double mean_abs_deviation_above(const CurveDiff& diff, double t_min) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& p : diff.points) {
    if (p.t > t_min) {
      sum += std::abs(p.simulated - p.analytic);
      ++count;
    }
  }
  return count == 0 ? std::numeric_limits<double>::quiet_NaN() : sum / static_cast<double>(count);
}

double spearman_rank_correlation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DomainError("spearman_rank_correlation: size mismatch");
  if (x.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mean = (n + 1.0) / 2.0;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mean) * (ry[i] - mean);
    sxx += (rx[i] - mean) * (rx[i] - mean);
    syy += (ry[i] - mean) * (ry[i] - mean);
  }
  if (sxx == 0.0 || syy == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return sxy / std::sqrt(sxx * syy);
}

PerUserReport per_user_report(const NetworkRealization& net, const CodingParams& params,
                              const PerUserOptions& options) {
  params.validate();
  if (options.fading_trials < kMinPerUserTrials) {
    throw SampleSizeError(fmt::format("per_user_report: {} fading trials, at least {} required",
                                      options.fading_trials, kMinPerUserTrials));
  }
  if (options.bootstrap_resamples < 2) {
    throw DomainError("per_user_report: need at least two bootstrap resamples");
  }
  const std::size_t n = net.size();
  const auto trials = static_cast<std::size_t>(options.fading_trials);
  const auto n_max = static_cast<double>(params.n_max);

  // Row f holds fading trial f for every pair.
  std::vector<int> t_rateless(trials * n);
  std::vector<char> ok_rateless(trials * n);
  std::vector<char> ok_fixed(trials * n);
  std::vector<std::size_t> violations(trials, 0);

  parallel_for(trials, options.threads, [&](std::size_t f) {
    auto rng = make_rng(options.seed, Stream::Fading, {0, f});
    const auto fading = FadingDraw::sample(n, rng);
    const LinkBudget budget(net, fading);
    const auto rateless = run_trial(budget, params, Mode::RatelessAck);
    const auto fixed = run_trial(budget, params, Mode::FixedRate);
    bool violated = false;
    for (std::size_t i = 0; i < n; ++i) {
      t_rateless[f * n + i] = rateless[i].t_slots;
      ok_rateless[f * n + i] = rateless[i].success;
      ok_fixed[f * n + i] = fixed[i].success;
      violated |= fixed[i].success && !rateless[i].success;
    }
    violations[f] = violated;
  });

  PerUserReport report;
  report.coupling_violations = std::accumulate(violations.begin(), violations.end(), std::size_t{0});

  // Sums over trials with multiplicity weights; weights of 1 give the point estimate.
  auto gains = [&](const std::vector<int>& weight, std::vector<double>& out) {
    std::vector<long long> sum_t(n, 0);
    std::vector<long long> sum_r(n, 0);
    std::vector<long long> sum_f(n, 0);
    for (std::size_t f = 0; f < trials; ++f) {
      const int w = weight[f];
      if (w == 0) continue;
      for (std::size_t i = 0; i < n; ++i) {
        sum_t[i] += static_cast<long long>(w) * t_rateless[f * n + i];
        sum_r[i] += w * ok_rateless[f * n + i];
        sum_f[i] += w * ok_fixed[f * n + i];
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = sum_f[i] == 0 ? std::numeric_limits<double>::infinity()
                             : n_max * static_cast<double>(sum_r[i]) /
                                   (static_cast<double>(sum_t[i]) / static_cast<double>(trials) *
                                    static_cast<double>(sum_f[i]));
    }
  };

  const std::vector<int> ones(trials, 1);
  std::vector<double> point(n);
  gains(ones, point);

  // Paired bootstrap: resample whole fading trials, keeping both schemes together.
  const auto resamples = static_cast<std::size_t>(options.bootstrap_resamples);
  std::vector<double> boot_sum(n, 0.0);
  std::vector<double> boot_sq(n, 0.0);
  std::vector<std::size_t> boot_count(n, 0);
  std::vector<int> weight(trials);
  std::vector<double> replicate(n);
  for (std::size_t b = 0; b < resamples; ++b) {
    auto rng = make_rng(options.seed, Stream::Bootstrap, {b});
    std::uniform_int_distribution<std::size_t> pick(0, trials - 1);
    std::fill(weight.begin(), weight.end(), 0);
    for (std::size_t draw = 0; draw < trials; ++draw) ++weight[pick(rng)];
    gains(weight, replicate);
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(replicate[i])) continue;
      boot_sum[i] += replicate[i];
      boot_sq[i] += replicate[i] * replicate[i];
      ++boot_count[i];
    }
  }

  const double k_bits = params.k_bits;
  report.records.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    long long sum_t = 0;
    long long succ_r = 0;
    long long succ_f = 0;
    for (std::size_t f = 0; f < trials; ++f) {
      sum_t += t_rateless[f * n + i];
      succ_r += ok_rateless[f * n + i];
      succ_f += ok_fixed[f * n + i];
    }
    auto& r = report.records[i];
    r.pair_id = i;
    r.distance = net.link_distance()[i];
    r.ps_rateless = static_cast<double>(succ_r) / static_cast<double>(trials);
    r.ps_fixed = static_cast<double>(succ_f) / static_cast<double>(trials);
    r.mean_T = static_cast<double>(sum_t) / static_cast<double>(trials);
    r.rate_rateless = k_bits * r.ps_rateless / r.mean_T;
    r.rate_fixed = k_bits / n_max * r.ps_fixed;
    r.censored = succ_f == 0;
    r.gain_GR = point[i];
    r.gain_GS = r.censored ? std::numeric_limits<double>::infinity() : r.ps_rateless / r.ps_fixed;
    if (boot_count[i] >= 2) {
      const double c = static_cast<double>(boot_count[i]);
      const double mean = boot_sum[i] / c;
      r.gain_sd = std::sqrt(std::max(0.0, (boot_sq[i] - c * mean * mean) / (c - 1.0)));
    } else {
      r.gain_sd = std::numeric_limits<double>::infinity();
    }
    report.censored += r.censored;
  }
  return report;
}

}  // namespace rateless
