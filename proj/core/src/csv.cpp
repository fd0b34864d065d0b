#include "rateless/csv.hpp"

#include <fstream>
#include <utility>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "rateless/errors.hpp"

namespace rateless {

std::string format_number(double value) { return fmt::format("{:.9g}", value); }

std::string csv_preamble(const SimConfig& config, std::string_view command) {
  std::string out = fmt::format("# rateless {}\n", command);
  const auto text = to_config_text(config);
  std::size_t start = 0;
  while (start < text.size()) {
    const auto end = text.find('\n', start);
    out += "# ";
    out += text.substr(start, end - start);
    out += '\n';
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size()) {
    throw DomainError(fmt::format("CsvTable: row has {} cells, header has {}", cells.size(),
                                  columns_.size()));
  }
  rows_.push_back(std::move(cells));
}

std::string CsvTable::render() const {
  std::string out = fmt::format("{}\n", fmt::join(columns_, ","));
  for (const auto& row : rows_) out += fmt::format("{}\n", fmt::join(row, ","));
  return out;
}

void write_csv(const std::filesystem::path& path, const SimConfig& config,
               std::string_view command, const CsvTable& table) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << csv_preamble(config, command) << table.render();
  if (!out) throw ConfigError("write failed for '" + path.string() + "'");
}

}  // namespace rateless
