#include "rateless/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rateless/parallel.hpp"
#include "rateless/random.hpp"

namespace rateless {

namespace {

constexpr std::uint64_t kDiagnosticsTag = 0xD1A6;

// Calls fn(realization_index, fading_index, trial_id, net, budget) for every
// trial; realizations are spread across workers.
template <typename F>
void for_each_trial(const SimConfig& config, unsigned threads, F&& fn) {
  config.validate();
  const auto realizations = static_cast<std::size_t>(config.realizations);
  const auto fading_trials = static_cast<std::size_t>(config.fading_trials);
  parallel_for(realizations, threads, [&](std::size_t r) {
    auto geometry_rng = make_rng(config.master_seed, Stream::Geometry, {r});
    const auto net = NetworkRealization::generate(config.intensity, config.window(), config.alpha,
                                                  geometry_rng);
    for (std::size_t f = 0; f < fading_trials; ++f) {
      auto fading_rng = make_rng(config.master_seed, Stream::Fading, {r, f});
      const auto fading = FadingDraw::sample(net.size(), fading_rng);
      const LinkBudget budget(net, fading);
      fn(r, f, r * fading_trials + f, net, budget);
    }
  });
}

int max_grid(const SimConfig& config) {
  return *std::max_element(config.n_grid.begin(), config.n_grid.end());
}

template <typename T>
std::size_t argmax_index(const std::vector<T>& values) {
  return static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
}

}  // namespace

SimulationResult simulate(const SimConfig& config, const RunOptions& options) {
  const auto params = config.coding();
  const auto fading_trials = static_cast<std::size_t>(config.fading_trials);
  const auto realizations = static_cast<std::size_t>(config.realizations);

  SimulationResult result;
  result.trials.resize(realizations * fading_trials);
  std::vector<TrialDiagnostics> diagnostics(result.trials.size());

  for_each_trial(config, options.threads,
                 [&](std::size_t r, std::size_t f, std::size_t id, const NetworkRealization&,
                     const LinkBudget& budget) {
                   TrialDiagnostics* diag = nullptr;
                   if (options.diagnostics) {
                     diagnostics[id].seed =
                         derive_seed(config.master_seed, Stream::Fading, {r, f, kDiagnosticsTag});
                     diag = &diagnostics[id];
                   }
                   result.trials[id].trial_id = id;
                   result.trials[id].outcomes = run_trial(budget, params, config.mode, diag);
                 });

  std::vector<int> pooled;
  for (const auto& trial : result.trials) {
    for (const auto& o : trial.outcomes) pooled.push_back(o.t_slots);
  }
  for (const auto& d : diagnostics) {
    auto& s = result.diagnostics;
    s.spot_checks += d.spot_checks;
    s.max_spot_check_rel_error = std::max(s.max_spot_check_rel_error, d.max_spot_check_rel_error);
    s.monotonicity_violations += d.monotonicity_violations;
    s.average_below_instant_violations += d.average_below_instant_violations;
    s.rate_monotonicity_violations += d.rate_monotonicity_violations;
  }
  result.ccdf = empirical_ccdf(pooled, config.n_max, std::string(to_string(config.mode)));
  return result;
}

CcdfCurve estimate_typical_ccdf(const SimConfig& config, const RunOptions& options) {
  return simulate(config, options).ccdf;
}

PairedSweep run_paired_sweep(const SimConfig& config, const RunOptions& options) {
  const std::size_t grid_size = config.n_grid.size();
  const int n_top = max_grid(config);
  const auto realizations = static_cast<std::size_t>(config.realizations);

  // Integer tallies per (realization, grid point); merging them is exact.
  struct Tally {
    std::size_t samples = 0;
    std::size_t fixed = 0;
    std::size_t rateless = 0;
    long long sum_t = 0;
    std::size_t violations = 0;
  };
  std::vector<Tally> tallies(realizations * grid_size);

  for_each_trial(config, options.threads,
                 [&](std::size_t r, std::size_t, std::size_t, const NetworkRealization&,
                     const LinkBudget& budget) {
                   const auto rateless = run_trial(budget, config.coding(n_top), Mode::RatelessAck);
                   for (std::size_t g = 0; g < grid_size; ++g) {
                     const int n = config.n_grid[g];
                     const auto fixed = run_trial(budget, config.coding(n), Mode::FixedRate);
                     auto& tally = tallies[r * grid_size + g];
                     for (std::size_t i = 0; i < fixed.size(); ++i) {
                       const bool ok_r = rateless[i].success && rateless[i].t_slots <= n;
                       ++tally.samples;
                       tally.fixed += fixed[i].success;
                       tally.rateless += ok_r;
                       tally.sum_t += std::min(rateless[i].t_slots, n);
                       tally.violations += fixed[i].success && !ok_r;
                     }
                   }
                 });

  PairedSweep sweep;
  std::vector<double> rates_fixed;
  std::vector<double> rates_rateless;
  std::vector<double> rates_fixed_analytic;
  std::vector<double> rates_rateless_analytic;
  for (std::size_t g = 0; g < grid_size; ++g) {
    Tally total;
    for (std::size_t r = 0; r < realizations; ++r) {
      const auto& t = tallies[r * grid_size + g];
      total.samples += t.samples;
      total.fixed += t.fixed;
      total.rateless += t.rateless;
      total.sum_t += t.sum_t;
      total.violations += t.violations;
    }
    const int n = config.n_grid[g];
    const auto params = config.coding(n);
    const double samples = static_cast<double>(total.samples);

    PairedSweepPoint p;
    p.fixed.n = p.rateless.n = n;
    p.fixed.samples = p.rateless.samples = total.samples;
    p.fixed.successes = total.fixed;
    p.fixed.ps = static_cast<double>(total.fixed) / samples;
    p.fixed.mean_T = n;
    p.fixed.rate = config.k_bits / n * p.fixed.ps;
    p.rateless.successes = total.rateless;
    p.rateless.ps = static_cast<double>(total.rateless) / samples;
    p.rateless.mean_T = static_cast<double>(total.sum_t) / samples;
    p.rateless.rate = config.k_bits * p.rateless.ps / p.rateless.mean_T;
    p.coupling_violations = total.violations;
    p.mu = mean_interferer_time_mu(params);
    p.ps_fixed_analytic = ps_fixed(params);
    p.ps_rateless_lb_analytic = ps_rateless_lb(params, p.mu);
    p.rate_fixed_analytic = rate_fixed(params);
    p.rate_rateless_analytic = rate_rateless_estimate(params, p.mu);

    sweep.coupling_violations += p.coupling_violations;
    rates_fixed.push_back(p.fixed.rate);
    rates_rateless.push_back(p.rateless.rate);
    rates_fixed_analytic.push_back(p.rate_fixed_analytic);
    rates_rateless_analytic.push_back(p.rate_rateless_analytic);
    sweep.points.push_back(p);
  }
  const auto i_f = argmax_index(rates_fixed);
  const auto i_r = argmax_index(rates_rateless);
  sweep.n_f = config.n_grid[i_f];
  sweep.n_r = config.n_grid[i_r];
  sweep.max_rate_fixed = rates_fixed[i_f];
  sweep.max_rate_rateless = rates_rateless[i_r];
  sweep.n_f_analytic = config.n_grid[argmax_index(rates_fixed_analytic)];
  sweep.n_r_analytic = config.n_grid[argmax_index(rates_rateless_analytic)];
  return sweep;
}

std::vector<SchemePoint> run_fixed_rate_sweep(const SimConfig& config, const RunOptions& options) {
  std::vector<SchemePoint> out;
  for (const auto& p : run_paired_sweep(config, options).points) out.push_back(p.fixed);
  return out;
}

std::vector<SchemePoint> run_rateless_sweep(const SimConfig& config, const RunOptions& options) {
  std::vector<SchemePoint> out;
  for (const auto& p : run_paired_sweep(config, options).points) out.push_back(p.rateless);
  return out;
}

ContinuousResult run_continuous_mode(const SimConfig& config, const RunOptions& options) {
  SimConfig run = config;
  run.mode = Mode::Continuous;
  run.n_max = std::max(config.n_max, max_grid(config));
  const auto sim = simulate(run, options);

  std::vector<int> at_n_max;
  for (const auto& trial : sim.trials) {
    for (const auto& o : trial.outcomes) at_n_max.push_back(std::min(o.t_slots, config.n_max));
  }
  ContinuousResult result;
  result.ccdf = empirical_ccdf(at_n_max, config.n_max, std::string(to_string(Mode::Continuous)));

  for (int n : config.n_grid) {
    long long sum_t = 0;
    std::size_t samples = 0;
    for (const auto& trial : sim.trials) {
      for (const auto& o : trial.outcomes) {
        sum_t += std::min(o.t_slots, n);
        ++samples;
      }
    }
    ContinuousPoint p;
    p.n = n;
    p.mean_T = static_cast<double>(sum_t) / static_cast<double>(samples);
    p.gbar_r = n / p.mean_T;
    p.gbar_r_analytic = gbar_r(config.coding(n));
    result.points.push_back(p);
  }
  return result;
}

}  // namespace rateless
