#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mqed/units.hpp"

namespace mqed {

struct Column {
  std::string name;
  units::Quantity quantity = units::Quantity::dimensionless;
};

using Cell = std::variant<double, std::string>;

/// Tabular sweep result with the provenance needed to reproduce it.
struct SweepResult {
  std::string command;
  /// Echoed configuration, in the order it should be printed.
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;
  bool si = false;
  double omega_ref = 1.0;

  void add_row(std::vector<Cell> row);
};

/// "%.17g" formatting used everywhere numbers are serialized.
std::string format_number(double v);

std::string to_csv(const SweepResult& table);
std::string to_json(const SweepResult& table);

/// Writes `contents` to a sibling temporary file and renames it over `path`,
/// so readers see either the old file or the complete new one.
/// Throws IoError on failure and leaves no temporary behind.
void write_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace mqed
