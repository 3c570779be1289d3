#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace lrp::cli {

std::string code_version();

/// Shortest round-trip representation ("%.17g").
std::string format_double(double value);

/// A CSV table with a header line; fields never contain commas.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::vector<std::string> row);
  const std::vector<std::string>& header() const noexcept { return header_; }
  const std::vector<std::vector<std::string>>& rows() const noexcept { return rows_; }

  std::string to_string() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

CsvTable read_csv(const std::filesystem::path& path);

/// Columns shared by every per-trial table, in this order.
std::vector<std::string> provenance_columns();

}  // namespace lrp::cli
