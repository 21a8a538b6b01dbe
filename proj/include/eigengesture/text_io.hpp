#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace eigengesture {

// Shortest decimal form that parses back to the identical double.
std::string format_number(double value);

// Fixed-point with the given number of decimals; never prints "-0".
std::string format_fixed(double value, int decimals);

std::optional<double> parse_number(std::string_view text);

std::string_view trim(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);

// Writes to a sibling temp file then renames over the target.
void write_text_file_atomic(const std::filesystem::path& path, std::string_view content);

// Delimited-text matrix: '#' comment lines, one header line of column names,
// then one comma-separated row per line.
std::string format_matrix_csv(const Eigen::MatrixXd& values, std::span<const std::string> columns,
                              std::span<const std::string> comments = {});

struct ParsedTable {
  std::vector<std::string> columns;
  Eigen::MatrixXd values;
};

// Inverse of format_matrix_csv; throws Error(MalformedFile).
ParsedTable parse_matrix_csv(std::string_view text);

}  // namespace eigengesture
