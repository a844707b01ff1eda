#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace cancoord::cli {

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

/// JSON number: integral values within 2^53 become JSON integers so reports
/// read "p1": 6 rather than 6.0.
nlohmann::json json_number(double v);

/// Canonical JSON text: two-space indent, trailing newline.
std::string canonical_dump(const nlohmann::json& j);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::string render() const;
};

/// Throws std::runtime_error naming the path on failure.
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace cancoord::cli
