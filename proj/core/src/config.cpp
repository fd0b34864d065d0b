#include "rateless/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "rateless/errors.hpp"

namespace rateless {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(fmt::format("config: '{}' expects a number, got '{}'", key, value));
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true") return true;
  if (value == "false") return false;
  throw ConfigError(fmt::format("config: '{}' expects true or false, got '{}'", key, value));
}

std::string parse_string(std::string_view key, std::string_view value) {
  if (value.size() < 2 || value.front() != '"' || value.back() != '"') {
    throw ConfigError(fmt::format("config: '{}' expects a quoted string, got '{}'", key, value));
  }
  return std::string(value.substr(1, value.size() - 2));
}

std::vector<int> parse_int_list(std::string_view key, std::string_view value) {
  if (value.size() < 2 || value.front() != '[' || value.back() != ']') {
    throw ConfigError(fmt::format("config: '{}' expects [a, b, ...], got '{}'", key, value));
  }
  std::vector<int> out;
  auto body = value.substr(1, value.size() - 2);
  while (!trim(body).empty()) {
    const auto comma = body.find(',');
    out.push_back(parse_number<int>(key, trim(body.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    body = body.substr(comma + 1);
  }
  return out;
}

}  // namespace

void SimConfig::validate() const {
  auto require = [](bool ok, std::string_view what) {
    if (!ok) throw ConfigError(fmt::format("config: {}", what));
  };
  require(intensity > 0.0 && std::isfinite(intensity), "intensity must be positive");
  require(alpha > 2.0 && std::isfinite(alpha), "alpha must exceed 2");
  require(k_bits > 0.0 && std::isfinite(k_bits), "k_bits must be positive");
  require(n_max >= 1 && n_max <= kMaxSlots, "n_max must lie in [1, 10000]");
  require(window_side > 0.0 && std::isfinite(window_side), "window_side must be positive");
  require(crofton_c > 0.0 && std::isfinite(crofton_c), "crofton_c must be positive");
  require(realizations >= 1, "realizations must be >= 1");
  require(fading_trials >= 1, "fading_trials must be >= 1");
  require(!n_grid.empty(), "n_grid must not be empty");
  for (int n : n_grid) require(n >= 1 && n <= kMaxSlots, "n_grid entries must lie in [1, 10000]");
  require(!output_dir.empty(), "output_dir must not be empty");
}

std::string to_config_text(const SimConfig& c) {
  std::string out;
  auto line = [&](std::string_view key, const auto& value) {
    out += fmt::format("{} = {}\n", key, value);
  };
  line("intensity", c.intensity);
  line("alpha", c.alpha);
  line("k_bits", c.k_bits);
  line("n_max", c.n_max);
  line("window_side", c.window_side);
  line("wraparound", c.wraparound);
  line("crofton_c", c.crofton_c);
  line("mode", fmt::format("\"{}\"", to_string(c.mode)));
  line("realizations", c.realizations);
  line("fading_trials", c.fading_trials);
  line("master_seed", c.master_seed);
  line("n_grid", fmt::format("[{}]", fmt::join(c.n_grid, ", ")));
  line("output_dir", fmt::format("\"{}\"", c.output_dir));
  return out;
}

SimConfig from_config_text(std::string_view text, SimConfig c) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto newline = text.find('\n');
    auto raw = text.substr(0, newline);
    text = newline == std::string_view::npos ? std::string_view{} : text.substr(newline + 1);
    ++line_no;

    // Strip comments that are not inside a quoted string.
    bool quoted = false;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] == '"') quoted = !quoted;
      if (raw[i] == '#' && !quoted) {
        raw = raw.substr(0, i);
        break;
      }
    }
    const auto line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(fmt::format("config line {}: expected key = value", line_no));
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));

    if (key == "intensity") c.intensity = parse_number<double>(key, value);
    else if (key == "alpha") c.alpha = parse_number<double>(key, value);
    else if (key == "k_bits") c.k_bits = parse_number<double>(key, value);
    else if (key == "n_max") c.n_max = parse_number<int>(key, value);
    else if (key == "window_side") c.window_side = parse_number<double>(key, value);
    else if (key == "wraparound") c.wraparound = parse_bool(key, value);
    else if (key == "crofton_c") c.crofton_c = parse_number<double>(key, value);
    else if (key == "mode") c.mode = mode_from_string(parse_string(key, value));
    else if (key == "realizations") c.realizations = parse_number<int>(key, value);
    else if (key == "fading_trials") c.fading_trials = parse_number<int>(key, value);
    else if (key == "master_seed") c.master_seed = parse_number<std::uint64_t>(key, value);
    else if (key == "n_grid") c.n_grid = parse_int_list(key, value);
    else if (key == "output_dir") c.output_dir = parse_string(key, value);
    else throw ConfigError(fmt::format("config line {}: unknown key '{}'", line_no, key));
  }
  return c;
}

SimConfig load_config_file(const std::string& path, SimConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_config_text(buffer.str(), std::move(base));
}

}  // namespace rateless
