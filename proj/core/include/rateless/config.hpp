#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rateless/analytics.hpp"
#include "rateless/geometry.hpp"
#include "rateless/netsim.hpp"

namespace rateless {

// Every experiment knob. Defaults are desk scale (window side 20); the
// full-scale network uses window_side = 60.
struct SimConfig {
  double intensity = 1.0;
  double alpha = 3.0;
  double k_bits = 75.0;
  int n_max = 60;
  double window_side = 20.0;
  bool wraparound = true;
  double crofton_c = 1.0;
  Mode mode = Mode::RatelessAck;
  int realizations = 50;
  int fading_trials = 1;
  std::uint64_t master_seed = 1;
  std::vector<int> n_grid = {10, 20, 30, 40, 50, 60, 70, 80, 90, 100, 110, 120};
  std::string output_dir = "out";

  // Throws ConfigError on any violated constraint.
  void validate() const;

  CodingParams coding() const { return {k_bits, n_max, alpha, crofton_c}; }
  CodingParams coding(int n) const { return {k_bits, n, alpha, crofton_c}; }
  Window window() const { return {window_side, wraparound}; }

  bool operator==(const SimConfig&) const = default;
};

inline constexpr int kMaxSlots = 10'000;

// Flat `key = value` text (TOML subset: numbers, booleans, quoted strings,
// one-line integer arrays, `#` comments). Doubles are written in shortest
// round-trip form, so from_config_text(to_config_text(c)) == c.
std::string to_config_text(const SimConfig& config);

// Parses onto `base`: keys absent from `text` keep their value in `base`.
SimConfig from_config_text(std::string_view text, SimConfig base = {});

SimConfig load_config_file(const std::string& path, SimConfig base = {});

}  // namespace rateless
