#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "rateless/config.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(RATELESS_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("rateless_cli_" + name);
}

TEST(Cli, AnalyzeWritesCsvs) {
  const auto dir = scratch("analyze");
  const auto r = run("analyze --n-grid 50,60 --output-dir " + dir.string());
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(std::filesystem::exists(dir / "curves.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir / "gains.csv"));
  std::ifstream in(dir / "gains.csv");
  std::string line;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') ++rows;
  }
  EXPECT_EQ(rows, 3u);  // header + 2
  std::filesystem::remove_all(dir);
}

TEST(Cli, PrintConfigRoundTrips) {
  const auto r = run("simulate --alpha 3.5 --n-grid 7,8 --mode continuous --seed 99 --print-config");
  ASSERT_EQ(r.code, 0);
  const auto c = rateless::from_config_text(r.out);
  EXPECT_EQ(c.alpha, 3.5);
  EXPECT_EQ(c.mode, rateless::Mode::Continuous);
  EXPECT_EQ(c.master_seed, 99u);
  EXPECT_EQ(c.n_grid, (std::vector<int>{7, 8}));
}

TEST(Cli, ConfigFileThenFlags) {
  const auto file = scratch("cfg.toml");
  {
    std::ofstream out(file);
    out << "alpha = 4\nn_max = 75\n";
  }
  const auto r = run("analyze --config " + file.string() + " --n-max 80 --print-config");
  ASSERT_EQ(r.code, 0);
  const auto c = rateless::from_config_text(r.out);
  EXPECT_EQ(c.alpha, 4.0);
  EXPECT_EQ(c.n_max, 80);
  std::filesystem::remove(file);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("analyze --alpha 2 --print-config").code, 2);
  EXPECT_EQ(run("analyze --no-such-flag").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("simulate --mode harq").code, 2);
  EXPECT_EQ(run("analyze --config /nonexistent/file").code, 2);
  const auto dir = scratch("peruser");
  EXPECT_EQ(run("peruser --fading-trials 5 --output-dir " + dir.string()).code, 4);
  EXPECT_EQ(run("simulate --window-side 2 --realizations 1 --output-dir " + dir.string()).code, 4);
  std::filesystem::remove_all(dir);
  EXPECT_EQ(run("--help").code, 0);
}

}  // namespace
