#include "rateless/netsim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rateless/errors.hpp"

namespace rateless {

namespace {

// Recompute a user's interference from scratch once incremental subtraction
// has removed this fraction of the value it started from; bounds cancellation
// error to roughly n * eps / kRecomputeFraction relative.
constexpr double kRecomputeFraction = 1e-3;
constexpr double kCheckSlack = 1e-12;

}  // namespace

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::RatelessAck: return "rateless_ack";
    case Mode::FixedRate: return "fixed_rate";
    case Mode::Continuous: return "continuous";
  }
  return "unknown";
}

Mode mode_from_string(std::string_view name) {
  if (name == "rateless_ack") return Mode::RatelessAck;
  if (name == "fixed_rate") return Mode::FixedRate;
  if (name == "continuous") return Mode::Continuous;
  throw ConfigError("unknown mode '" + std::string(name) +
                    "' (expected rateless_ack, fixed_rate or continuous)");
}

FadingDraw FadingDraw::sample(std::size_t n, Rng& rng) {
  std::exponential_distribution<double> exp1(1.0);
  std::vector<double> gains(n * n);
  for (auto& g : gains) {
    // Exp(1) is zero with probability zero; keep gains strictly positive.
    do {
      g = exp1(rng);
    } while (g <= 0.0);
  }
  return FadingDraw(n, std::move(gains));
}

FadingDraw::FadingDraw(std::size_t n, std::vector<double> gains) : n_(n), gains_(std::move(gains)) {
  if (gains_.size() != n_ * n_) throw DomainError("FadingDraw: size mismatch");
}

LinkBudget::LinkBudget(const NetworkRealization& net, const FadingDraw& fading)
    : n_(net.size()), signal_(n_), by_bs_(n_ * n_), full_(n_, 0.0), distance_(net.link_distance()) {
  if (fading.size() != n_) throw DomainError("LinkBudget: fading and network sizes differ");
  const auto& pl = net.pathloss();
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = 0; k < n_; ++k) {
      const double power = fading(i, k) * pl(i, k);
      if (k == i) {
        signal_[i] = power;
      } else {
        by_bs_[k * n_ + i] = power;
        full_[i] += power;
      }
    }
  }
}

std::vector<LinkOutcome> run_trial(const LinkBudget& budget, const CodingParams& params, Mode mode,
                                   TrialDiagnostics* diagnostics) {
  params.validate();
  const std::size_t n = budget.size();
  const int slots = params.n_max;
  const double k_bits = params.k_bits;

  std::vector<LinkOutcome> outcomes(n);
  for (std::size_t i = 0; i < n; ++i) {
    outcomes[i].pair_id = i;
    outcomes[i].distance = budget.distance(i);
    outcomes[i].t_slots = slots;
  }

  if (mode == Mode::FixedRate) {
    for (std::size_t i = 0; i < n; ++i) {
      const double interference = budget.full_interference(i);
      outcomes[i].success =
          k_bits < slots * std::log2(1.0 + budget.signal(i) / interference);
      outcomes[i].mean_avg_interference_at_t = interference;
    }
    return outcomes;
  }

  const bool shutdowns = mode == Mode::RatelessAck;
  std::vector<double> current(n);
  std::vector<double> base(n);
  std::vector<double> deficit(n, 0.0);  // sum over slots of (full - current)
  std::vector<std::size_t> active_others(n, n - 1);
  std::vector<char> active(n, 1);
  std::vector<double> last_rate(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) current[i] = base[i] = budget.full_interference(i);

  std::vector<std::size_t> pending(n);
  for (std::size_t i = 0; i < n; ++i) pending[i] = i;
  std::vector<std::size_t> still_pending;
  std::vector<std::size_t> decoded_now;
  still_pending.reserve(n);
  decoded_now.reserve(n);

  Rng check_rng(diagnostics ? diagnostics->seed : 0);
  std::uniform_real_distribution<double> check_draw(0.0, 1.0);

  auto direct_interference = [&](std::size_t user) {
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k != user && active[k]) sum += budget.interferer(k, user);
    }
    return sum;
  };

  for (int slot = 1; slot <= slots && !pending.empty(); ++slot) {
    still_pending.clear();
    decoded_now.clear();
    for (std::size_t i : pending) {
      const double full = budget.full_interference(i);
      deficit[i] += std::max(0.0, full - current[i]);
      const double average = full - deficit[i] / slot;
      const double rate = slot * std::log2(1.0 + budget.signal(i) / average);

      if (diagnostics) {
        if (average < current[i] * (1.0 - kCheckSlack)) {
          ++diagnostics->average_below_instant_violations;
        }
        if (rate < last_rate[i] * (1.0 - kCheckSlack)) ++diagnostics->rate_monotonicity_violations;
        last_rate[i] = rate;
        if (check_draw(check_rng) < diagnostics->spot_check_fraction) {
          const double direct = direct_interference(i);
          const double scale = std::max(direct, std::numeric_limits<double>::min());
          ++diagnostics->spot_checks;
          diagnostics->max_spot_check_rel_error =
              std::max(diagnostics->max_spot_check_rel_error, std::abs(current[i] - direct) / scale);
        }
      }

      outcomes[i].mean_avg_interference_at_t = average;
      if (k_bits < rate) {
        outcomes[i].success = true;
        outcomes[i].t_slots = slot;
        decoded_now.push_back(i);
      } else {
        still_pending.push_back(i);
      }
    }
    pending.swap(still_pending);

    if (!shutdowns) continue;
    // One BS at a time, so a direct recomputation sees exactly the BSs
    // already subtracted.
    for (std::size_t k : decoded_now) {
      active[k] = 0;
      const auto column = budget.interferers_of_bs(k);
      for (std::size_t i : pending) {
        const double before = current[i];
        if (--active_others[i] == 0) {
          current[i] = 0.0;
        } else {
          current[i] -= column[i];
          if (current[i] < kRecomputeFraction * base[i]) {
            current[i] = direct_interference(i);
            base[i] = current[i];
          }
        }
        if (diagnostics && current[i] > before * (1.0 + kCheckSlack)) {
          ++diagnostics->monotonicity_violations;
        }
      }
    }
  }
  return outcomes;
}

std::vector<LinkOutcome> run_trial(const NetworkRealization& net, const FadingDraw& fading,
                                   const CodingParams& params, Mode mode,
                                   TrialDiagnostics* diagnostics) {
  if (params.alpha != net.alpha()) {
    throw DomainError("run_trial: coding alpha " + std::to_string(params.alpha) +
                      " differs from the realization's path-loss alpha " +
                      std::to_string(net.alpha()));
  }
  return run_trial(LinkBudget(net, fading), params, mode, diagnostics);
}

}  // namespace rateless
