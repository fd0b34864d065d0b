#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "rateless/analytics.hpp"
#include "rateless/geometry.hpp"
#include "rateless/random.hpp"

namespace rateless {

enum class Mode {
  RatelessAck,  // interferers fall silent once their own packet is decoded
  FixedRate,    // one decoding attempt at t = N against full interference
  Continuous,   // rateless serving link, interferers never switch off
};

std::string_view to_string(Mode mode);
Mode mode_from_string(std::string_view name);

// Quasi-static power fading |h_ki|^2 ~ Exp(1) for every (user i, BS k),
// constant over one packet window.
class FadingDraw {
 public:
  static FadingDraw sample(std::size_t n, Rng& rng);
  FadingDraw(std::size_t n, std::vector<double> gains);

  std::size_t size() const { return n_; }
  double operator()(std::size_t user, std::size_t bs) const { return gains_[user * n_ + bs]; }

 private:
  std::size_t n_ = 0;
  std::vector<double> gains_;
};

// Received powers for one (realization, fading) pair, reused across modes and
// delay constraints. Interferer powers are stored BS-major so switching off
// one base station walks contiguous memory.
class LinkBudget {
 public:
  LinkBudget(const NetworkRealization& net, const FadingDraw& fading);

  std::size_t size() const { return n_; }
  double signal(std::size_t user) const { return signal_[user]; }
  // Power from BS k at user i (zero on the diagonal).
  double interferer(std::size_t bs, std::size_t user) const { return by_bs_[bs * n_ + user]; }
  std::span<const double> interferers_of_bs(std::size_t bs) const {
    return {by_bs_.data() + bs * n_, n_};
  }
  // Interference with every other BS active.
  double full_interference(std::size_t user) const { return full_[user]; }
  double distance(std::size_t user) const { return distance_[user]; }

 private:
  std::size_t n_;
  std::vector<double> signal_;
  std::vector<double> by_bs_;
  std::vector<double> full_;
  std::vector<double> distance_;
};

struct LinkOutcome {
  std::size_t pair_id = 0;
  int t_slots = 0;  // in 1..N; equals N on failure
  bool success = false;
  double distance = 0.0;
  double mean_avg_interference_at_t = 0.0;  // time-averaged interference at the final slot
};

// Optional invariant checks on one trial. When enabled, run_trial verifies that
// instantaneous interference never increases (RatelessAck), that the running
// average dominates it, that n * log2(1 + SIR_avg(n)) is nondecreasing, and
// compares the incremental interference against a direct recomputation on a
// sample of slots. Violations are counted, not thrown.
struct TrialDiagnostics {
  double spot_check_fraction = 0.01;
  std::uint64_t seed = 0;

  std::size_t spot_checks = 0;
  double max_spot_check_rel_error = 0.0;
  std::size_t monotonicity_violations = 0;
  std::size_t average_below_instant_violations = 0;
  std::size_t rate_monotonicity_violations = 0;
};

// Runs one packet window of N slots for every BS-user pair.
// Slot n: each user still decoding averages the interference of the BSs
// active during the slot and attempts to decode (K < n log2(1 + S / I_avg(n))).
// Pairs that decode in slot n switch off from slot n + 1 in RatelessAck mode.
std::vector<LinkOutcome> run_trial(const LinkBudget& budget, const CodingParams& params, Mode mode,
                                   TrialDiagnostics* diagnostics = nullptr);

std::vector<LinkOutcome> run_trial(const NetworkRealization& net, const FadingDraw& fading,
                                   const CodingParams& params, Mode mode,
                                   TrialDiagnostics* diagnostics = nullptr);

}  // namespace rateless
