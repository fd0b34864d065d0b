#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "rateless/errors.hpp"
#include "rateless/experiments.hpp"
#include "rateless/simulation.hpp"

namespace {

using namespace rateless;

SimConfig small_config() {
  SimConfig c;
  c.window_side = 10.0;
  c.realizations = 4;
  c.fading_trials = 2;
  c.n_max = 60;
  c.n_grid = {10, 30, 60, 90};
  c.master_seed = 5;
  return c;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(Simulate, PoolsEveryPairAndIsThreadIndependent) {
  const auto c = small_config();
  const auto one = simulate(c, {1, true});
  const auto many = simulate(c, {3, true});
  ASSERT_EQ(one.trials.size(), 8u);
  std::size_t pooled = 0;
  for (std::size_t i = 0; i < one.trials.size(); ++i) {
    EXPECT_EQ(one.trials[i].trial_id, i);
    ASSERT_EQ(one.trials[i].outcomes.size(), many.trials[i].outcomes.size());
    for (std::size_t k = 0; k < one.trials[i].outcomes.size(); ++k) {
      EXPECT_EQ(one.trials[i].outcomes[k].t_slots, many.trials[i].outcomes[k].t_slots);
    }
    pooled += one.trials[i].outcomes.size();
  }
  EXPECT_EQ(one.ccdf.samples, pooled);
  EXPECT_EQ(one.ccdf.values, many.ccdf.values);
  EXPECT_EQ(one.diagnostics.monotonicity_violations, 0u);
  EXPECT_EQ(one.diagnostics.rate_monotonicity_violations, 0u);
  EXPECT_LE(one.diagnostics.max_spot_check_rel_error, 1e-9);
}

TEST(Simulate, FadingTrialsShareTheRealization) {
  const auto c = small_config();
  const auto r = simulate(c);
  for (std::size_t k = 0; k < r.trials[0].outcomes.size(); ++k) {
    EXPECT_EQ(r.trials[0].outcomes[k].distance, r.trials[1].outcomes[k].distance);
  }
}

TEST(Simulate, RefusesTinySamples) {
  auto c = small_config();
  c.window_side = 3.0;
  c.realizations = 1;
  c.fading_trials = 1;
  EXPECT_THROW(simulate(c), SampleSizeError);
}

TEST(Sweep, CouplingAndOrdering) {
  const auto c = small_config();
  const auto s = run_paired_sweep(c, {2, false});
  ASSERT_EQ(s.points.size(), c.n_grid.size());
  EXPECT_EQ(s.coupling_violations, 0u);
  for (const auto& p : s.points) {
    EXPECT_GE(p.rateless.ps, p.fixed.ps);
    EXPECT_LE(p.rateless.mean_T, p.rateless.n);
    EXPECT_GT(p.rateless.mean_T, 0.0);
    EXPECT_GT(p.ps_rateless_lb_analytic, p.ps_fixed_analytic);
  }
  for (std::size_t i = 1; i < s.points.size(); ++i) {
    EXPECT_GE(s.points[i].rateless.ps, s.points[i - 1].rateless.ps);
  }
  const auto fixed = run_fixed_rate_sweep(c);
  const auto rateless = run_rateless_sweep(c);
  for (std::size_t i = 0; i < fixed.size(); ++i) {
    EXPECT_EQ(fixed[i].successes, s.points[i].fixed.successes);
    EXPECT_EQ(rateless[i].successes, s.points[i].rateless.successes);
  }
}

TEST(Sweep, TruncatedRunsMatchDirectRuns) {
  // The sweep derives N = 30 from the N = 90 run; compare with a direct run.
  auto c = small_config();
  const auto s = run_paired_sweep(c);
  c.n_max = 30;
  std::size_t successes = 0;
  std::size_t samples = 0;
  for (const auto& trial : simulate(c).trials) {
    for (const auto& o : trial.outcomes) {
      successes += o.success;
      ++samples;
    }
  }
  EXPECT_EQ(s.points[1].rateless.successes, successes);
  EXPECT_EQ(s.points[1].rateless.samples, samples);
}

TEST(Continuous, GainAtLeastOne) {
  auto c = small_config();
  c.alpha = 4.0;
  const auto r = run_continuous_mode(c);
  ASSERT_EQ(r.points.size(), c.n_grid.size());
  for (const auto& p : r.points) {
    EXPECT_GE(p.gbar_r, 1.0);
    EXPECT_GE(p.gbar_r_analytic, 1.0);
  }
  EXPECT_EQ(r.ccdf.t.size(), 60u);
}

TEST(Experiments, AnalyzeWritesSchemas) {
  auto c = small_config();
  c.alpha = 4.0;
  c.n_grid = {50, 60};
  c.output_dir = (std::filesystem::temp_directory_path() / "rateless_exp_analyze").string();
  const auto files = cmd_analyze(c);
  ASSERT_EQ(files.size(), 2u);
  const auto curves = slurp(files[0]);
  EXPECT_NE(curves.find("\nt,ccdf_ub_thm1,ccdf_tni,ccdf_ub_thinning,ccdf_continuous,"
                        "ccdf_ub_thm1_arctan,ccdf_tni_arctan\n"),
            std::string::npos);
  EXPECT_EQ(curves, slurp(cmd_analyze(c)[0]));
  std::filesystem::remove_all(c.output_dir);
}

TEST(Experiments, SimulateIsByteIdenticalAcrossThreads) {
  auto c = small_config();
  c.output_dir = (std::filesystem::temp_directory_path() / "rateless_exp_sim1").string();
  const auto a = cmd_simulate(c, {1, false});
  c.output_dir = (std::filesystem::temp_directory_path() / "rateless_exp_sim2").string();
  const auto b = cmd_simulate(c, {4, false});
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto ta = slurp(a[i]);
    auto tb = slurp(b[i]);
    // Only the output_dir line of the preamble differs.
    ta.erase(ta.find("# output_dir"), ta.find('\n', ta.find("# output_dir")) - ta.find("# output_dir"));
    tb.erase(tb.find("# output_dir"), tb.find('\n', tb.find("# output_dir")) - tb.find("# output_dir"));
    EXPECT_EQ(ta, tb);
  }
  std::filesystem::remove_all(std::filesystem::temp_directory_path() / "rateless_exp_sim1");
  std::filesystem::remove_all(std::filesystem::temp_directory_path() / "rateless_exp_sim2");
}

TEST(Experiments, PeruserNeedsTrials) {
  auto c = small_config();
  c.fading_trials = 10;
  EXPECT_THROW(cmd_peruser(c), SampleSizeError);
}

}  // namespace
