#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "rateless/config.hpp"

namespace rateless {

// 9 significant digits; "inf" and "nan" spelled out.
std::string format_number(double value);

// `# rateless <command>` followed by the full config, one `# key = value` line
// each, so every CSV carries its own provenance.
std::string csv_preamble(const SimConfig& config, std::string_view command);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  void add_row(std::vector<std::string> cells);  // throws DomainError on width mismatch
  std::size_t rows() const { return rows_.size(); }
  std::string render() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

// Writes preamble + table; creates parent directories.
void write_csv(const std::filesystem::path& path, const SimConfig& config,
               std::string_view command, const CsvTable& table);

}  // namespace rateless
