// rateless: analytic curves and network simulations for rateless vs
// fixed-rate coding in a Poisson cellular downlink.

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rateless/config.hpp"
#include "rateless/errors.hpp"
#include "rateless/experiments.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitConvergence = 3;
constexpr int kExitSampleSize = 4;
constexpr int kExitOther = 1;

struct Overrides {
  double intensity = 0.0;
  double alpha = 0.0;
  double k_bits = 0.0;
  int n_max = 0;
  double window_side = 0.0;
  bool wraparound = true;
  double crofton_c = 0.0;
  std::string mode;
  int realizations = 0;
  int fading_trials = 0;
  std::uint64_t master_seed = 0;
  std::vector<int> n_grid;
  std::string output_dir;
};

void add_config_flags(CLI::App& app, Overrides& o, std::string& config_path, unsigned& threads,
                      bool& print_config) {
  app.add_option("--config", config_path, "Config file (key = value lines)");
  app.add_option("--intensity", o.intensity, "BS intensity lambda");
  app.add_option("--alpha", o.alpha, "Path-loss exponent (> 2)");
  app.add_option("--k-bits", o.k_bits, "Packet size K in bits");
  app.add_option("--n-max", o.n_max, "Delay constraint N in slots");
  app.add_option("--window-side", o.window_side, "Side of the square window (default 20; 60 for full scale)");
  app.add_option("--wraparound", o.wraparound, "Torus edges (true/false)");
  app.add_option("--crofton-c", o.crofton_c, "Rayleigh link-distance constant c");
  app.add_option("--mode", o.mode, "rateless_ack | fixed_rate | continuous");
  app.add_option("--realizations", o.realizations, "Network realizations");
  app.add_option("--fading-trials", o.fading_trials, "Fading draws per realization");
  app.add_option("--seed", o.master_seed, "Master seed");
  app.add_option("--n-grid", o.n_grid, "Delay constraints for sweeps")->delimiter(',');
  app.add_option("--output-dir", o.output_dir, "Directory for CSV output");
  app.add_option("--threads", threads, "Worker threads (0 = all cores); does not change output");
  app.add_flag("--print-config", print_config, "Print the effective config and exit");
}

rateless::SimConfig effective_config(const CLI::App& app, const Overrides& o,
                                     const std::string& config_path) {
  rateless::SimConfig c;
  if (!config_path.empty()) c = rateless::load_config_file(config_path);
  auto given = [&](const char* flag) { return app.count(flag) > 0; };
  if (given("--intensity")) c.intensity = o.intensity;
  if (given("--alpha")) c.alpha = o.alpha;
  if (given("--k-bits")) c.k_bits = o.k_bits;
  if (given("--n-max")) c.n_max = o.n_max;
  if (given("--window-side")) c.window_side = o.window_side;
  if (given("--wraparound")) c.wraparound = o.wraparound;
  if (given("--crofton-c")) c.crofton_c = o.crofton_c;
  if (given("--mode")) c.mode = rateless::mode_from_string(o.mode);
  if (given("--realizations")) c.realizations = o.realizations;
  if (given("--fading-trials")) c.fading_trials = o.fading_trials;
  if (given("--seed")) c.master_seed = o.master_seed;
  if (given("--n-grid")) c.n_grid = o.n_grid;
  if (given("--output-dir")) c.output_dir = o.output_dir;
  c.validate();
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rateless vs fixed-rate coding in a Poisson cellular downlink"};
  app.require_subcommand(1);

  struct Command {
    const char* name;
    const char* help;
    CLI::App* app = nullptr;
    Overrides overrides;
    std::string config_path;
    unsigned threads = 0;
    bool print_config = false;
  };
  std::vector<Command> commands = {
      {"analyze", "Analytic CCDFs, success probabilities, rates and gains"},
      {"simulate", "Run the configured mode; per-link outcomes and pooled CCDF"},
      {"compare", "Paired fixed/rateless sweeps over n_grid against the analytics"},
      {"peruser", "Per-user gains on one realization (needs --fading-trials >= 500)"},
  };
  for (auto& cmd : commands) {
    cmd.app = app.add_subcommand(cmd.name, cmd.help);
    add_config_flags(*cmd.app, cmd.overrides, cmd.config_path, cmd.threads, cmd.print_config);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    for (auto& cmd : commands) {
      if (!cmd.app->parsed()) continue;
      const auto config = effective_config(*cmd.app, cmd.overrides, cmd.config_path);
      if (cmd.print_config) {
        std::cout << rateless::to_config_text(config);
        return kExitOk;
      }
      const rateless::RunOptions options{cmd.threads, false};
      std::vector<std::filesystem::path> written;
      const std::string name = cmd.name;
      if (name == "analyze") written = rateless::cmd_analyze(config);
      else if (name == "simulate") written = rateless::cmd_simulate(config, options);
      else if (name == "compare") written = rateless::cmd_compare(config, options);
      else written = rateless::cmd_peruser(config, options);
      for (const auto& path : written) std::cout << path.string() << '\n';
    }
  } catch (const rateless::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const rateless::DomainError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const rateless::ConvergenceError& e) {
    std::cerr << "convergence error: " << e.what() << '\n';
    return kExitConvergence;
  } catch (const rateless::SampleSizeError& e) {
    std::cerr << "sample-size refusal: " << e.what() << '\n';
    return kExitSampleSize;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitOther;
  }
  return kExitOk;
}
