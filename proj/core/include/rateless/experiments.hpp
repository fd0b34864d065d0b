#pragma once

#include <filesystem>
#include <vector>

#include "rateless/config.hpp"
#include "rateless/simulation.hpp"

namespace rateless {

// Each command validates the config, writes its CSVs under config.output_dir
// and returns the paths written. Output bytes depend only on the config.

// curves.csv: analytic CCDFs on the default t-grid at N = n_max.
// gains.csv: one row per N in n_grid with mu, the gains and the p_s / rate curves.
// For alpha = 4 both files add closed-form (arctan) columns next to the general ones.
std::vector<std::filesystem::path> cmd_analyze(const SimConfig& config);

// outcomes.csv (trial_id, pair_id, D, T_slots, success, mode) and ccdf.csv.
std::vector<std::filesystem::path> cmd_simulate(const SimConfig& config,
                                                const RunOptions& options = {});

// sweep.csv, summary.csv and ccdf_compare.csv from paired sweeps over n_grid
// plus a RatelessAck run at n_max.
std::vector<std::filesystem::path> cmd_compare(const SimConfig& config,
                                               const RunOptions& options = {});

// peruser.csv for realization 0 of the master seed, config.fading_trials
// paired draws (at least 500).
std::vector<std::filesystem::path> cmd_peruser(const SimConfig& config,
                                               const RunOptions& options = {});

}  // namespace rateless
