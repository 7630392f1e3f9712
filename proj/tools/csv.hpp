#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stein::cli {

/// Shortest text that is not locale dependent and reads back to the same
/// double: 17 significant digits, '.' separator.
std::string format_real(double v);

/// Builds a CSV document with a fixed header and '\n' line endings.
class CsvTable {
public:
  explicit CsvTable(std::vector<std::string> header);

  CsvTable& row();
  CsvTable& add(double v);
  CsvTable& add_int(long long v);
  CsvTable& add_empty();

  std::string str() const;
  std::size_t columns() const { return header_.size(); }

private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

struct ParsedCsv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index by name; throws std::out_of_range if absent.
  std::size_t column(std::string_view name) const;
  /// Numeric field; empty fields yield nullopt.
  std::optional<double> number(std::size_t row, std::size_t col) const;
};

ParsedCsv parse_csv(std::string_view text);

/// Writes through a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

std::string read_file(const std::filesystem::path& path);

} // namespace stein::cli
