#include "rateless/experiments.hpp"

#include <cmath>
#include <string>

#include "rateless/analytics.hpp"
#include "rateless/csv.hpp"
#include "rateless/random.hpp"

namespace rateless {

namespace {

using std::filesystem::path;

std::string num(double v) { return format_number(v); }
std::string num(std::size_t v) { return std::to_string(v); }
std::string num(int v) { return std::to_string(v); }

// 1 - c / (c + sqrt(x) atan(sqrt(x))), zero at and beyond N.
double alpha4_ccdf(const CodingParams& params, double t) {
  if (t >= params.n_max) return 0.0;
  const double excess = alpha4::hyp2f1_neg(theta_t(params, t)) - 1.0;
  if (std::isinf(excess)) return 1.0;
  return excess / (params.crofton_c + excess);
}

}  // namespace

std::vector<path> cmd_analyze(const SimConfig& config) {
  config.validate();
  const bool alpha4_columns = config.alpha == 4.0;
  const auto params = config.coding();
  const auto grid = default_t_grid(config.n_max);
  const double mu = mean_interferer_time_mu(params);

  std::vector<std::string> columns = {"t", "ccdf_ub_thm1", "ccdf_tni", "ccdf_ub_thinning",
                                      "ccdf_continuous"};
  if (alpha4_columns) {
    columns.insert(columns.end(), {"ccdf_ub_thm1_arctan", "ccdf_tni_arctan"});
  }
  CsvTable curves(columns);
  for (double t : grid) {
    std::vector<std::string> row = {num(t), num(ccdf_ub_theorem1(params, t)),
                                    num(ccdf_tni(params, t)),
                                    num(ccdf_ub_thinning(params, t, mu)),
                                    num(ccdf_continuous(params, t))};
    if (alpha4_columns) {
      row.push_back(num(alpha4_ccdf(params, t)));
      row.push_back(num(1.0 - alpha4::hyp2f1_pos(theta_t(params, t))));
    }
    curves.add_row(std::move(row));
  }

  columns = {"N",         "mu",           "sir_gain_gamma", "gs_lower_bound", "gr",
             "gbar_r",    "ps_fixed",     "ps_rateless_lb", "rate_fixed",     "rate_rateless_estimate",
             "expected_T_ub"};
  if (alpha4_columns) columns.insert(columns.end(), {"mu_arctan", "gbar_r_arctan"});
  CsvTable gains(columns);
  for (int n : config.n_grid) {
    const auto p = config.coding(n);
    const auto report = gains_report(p);
    std::vector<std::string> row = {
        num(n),
        num(report.mu),
        num(report.sir_gain_gamma),
        num(report.gs_lower_bound),
        num(report.gr),
        num(report.gbar_r),
        num(ps_fixed(p)),
        num(ps_rateless_lb(p, report.mu)),
        num(rate_fixed(p)),
        num(rate_rateless_estimate(p, report.mu)),
        num(expected_T_ub(p, report.mu)),
    };
    if (alpha4_columns) {
      row.push_back(num(alpha4::mean_interferer_time_mu(p)));
      row.push_back(num(alpha4::gbar_r(p)));
    }
    gains.add_row(std::move(row));
  }

  const path dir = config.output_dir;
  write_csv(dir / "curves.csv", config, "analyze", curves);
  write_csv(dir / "gains.csv", config, "analyze", gains);
  return {dir / "curves.csv", dir / "gains.csv"};
}

std::vector<path> cmd_simulate(const SimConfig& config, const RunOptions& options) {
  config.validate();
  const auto result = simulate(config, options);
  const auto mode = std::string(to_string(config.mode));

  CsvTable outcomes({"trial_id", "pair_id", "D", "T_slots", "success", "mode"});
  for (const auto& trial : result.trials) {
    for (const auto& o : trial.outcomes) {
      outcomes.add_row({num(trial.trial_id), num(o.pair_id), num(o.distance), num(o.t_slots),
                        o.success ? "1" : "0", mode});
    }
  }

  const auto params = config.coding();
  CsvTable ccdf({"t", "ccdf", "ci_lower", "ci_upper", "samples", "ccdf_ub_thm1"});
  for (std::size_t i = 0; i < result.ccdf.t.size(); ++i) {
    const double t = result.ccdf.t[i];
    ccdf.add_row({num(t), num(result.ccdf.values[i]), num(result.ccdf.lower[i]),
                  num(result.ccdf.upper[i]), num(result.ccdf.samples),
                  num(ccdf_ub_theorem1(params, t))});
  }

  const path dir = config.output_dir;
  write_csv(dir / "outcomes.csv", config, "simulate", outcomes);
  write_csv(dir / "ccdf.csv", config, "simulate", ccdf);
  return {dir / "outcomes.csv", dir / "ccdf.csv"};
}

std::vector<path> cmd_compare(const SimConfig& config, const RunOptions& options) {
  config.validate();
  const auto sweep = run_paired_sweep(config, options);

  CsvTable table({"N", "samples", "ps_fixed", "ps_rateless", "mean_T_rateless", "rate_fixed",
                  "rate_rateless", "coupling_violations", "mu", "ps_fixed_analytic",
                  "ps_rateless_lb_analytic", "rate_fixed_analytic", "rate_rateless_analytic"});
  for (const auto& p : sweep.points) {
    table.add_row({num(p.fixed.n), num(p.fixed.samples), num(p.fixed.ps), num(p.rateless.ps),
                   num(p.rateless.mean_T), num(p.fixed.rate), num(p.rateless.rate),
                   num(p.coupling_violations), num(p.mu), num(p.ps_fixed_analytic),
                   num(p.ps_rateless_lb_analytic), num(p.rate_fixed_analytic),
                   num(p.rate_rateless_analytic)});
  }

  CsvTable summary({"N_f", "N_r", "max_rate_fixed", "max_rate_rateless", "N_f_analytic",
                    "N_r_analytic", "N_r_relative_gap", "coupling_violations"});
  const double gap =
      std::abs(static_cast<double>(sweep.n_r_analytic - sweep.n_r)) / static_cast<double>(sweep.n_r);
  summary.add_row({num(sweep.n_f), num(sweep.n_r), num(sweep.max_rate_fixed),
                   num(sweep.max_rate_rateless), num(sweep.n_f_analytic), num(sweep.n_r_analytic),
                   num(gap), num(sweep.coupling_violations)});

  SimConfig rateless_config = config;
  rateless_config.mode = Mode::RatelessAck;
  const auto ccdf = estimate_typical_ccdf(rateless_config, options);
  const auto params = config.coding();
  const double mu = mean_interferer_time_mu(params);
  CsvTable compare({"t", "ccdf", "ci_lower", "ci_upper", "ccdf_ub_thm1", "ccdf_ub_thinning",
                    "ccdf_tni"});
  for (std::size_t i = 0; i < ccdf.t.size(); ++i) {
    const double t = ccdf.t[i];
    compare.add_row({num(t), num(ccdf.values[i]), num(ccdf.lower[i]), num(ccdf.upper[i]),
                     num(ccdf_ub_theorem1(params, t)), num(ccdf_ub_thinning(params, t, mu)),
                     num(ccdf_tni(params, t))});
  }

  const path dir = config.output_dir;
  write_csv(dir / "sweep.csv", config, "compare", table);
  write_csv(dir / "summary.csv", config, "compare", summary);
  write_csv(dir / "ccdf_compare.csv", config, "compare", compare);
  return {dir / "sweep.csv", dir / "summary.csv", dir / "ccdf_compare.csv"};
}

std::vector<path> cmd_peruser(const SimConfig& config, const RunOptions& options) {
  config.validate();
  auto rng = make_rng(config.master_seed, Stream::Geometry, {0});
  const auto net =
      NetworkRealization::generate(config.intensity, config.window(), config.alpha, rng);
  PerUserOptions per_user;
  per_user.fading_trials = config.fading_trials;
  per_user.seed = config.master_seed;
  per_user.threads = options.threads;
  const auto report = per_user_report(net, config.coding(), per_user);

  CsvTable table({"pair_id", "D", "ps_rateless", "ps_fixed", "mean_T", "rate_rateless",
                  "rate_fixed", "gain_GR", "gain_GR_sd", "censored_flag"});
  for (const auto& r : report.records) {
    table.add_row({num(r.pair_id), num(r.distance), num(r.ps_rateless), num(r.ps_fixed),
                   num(r.mean_T), num(r.rate_rateless), num(r.rate_fixed), num(r.gain_GR),
                   num(r.gain_sd), r.censored ? "1" : "0"});
  }
  const path dir = config.output_dir;
  write_csv(dir / "peruser.csv", config, "peruser", table);
  return {dir / "peruser.csv"};
}

}  // namespace rateless
