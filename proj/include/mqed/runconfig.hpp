#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mqed/material.hpp"

namespace mqed {

/// Ordered key = value pairs. Keys may repeat (one resonance per group of
/// omega0/omegaP/gamma in a material file); '#' starts a comment.
struct KeyValues {
  std::vector<std::pair<std::string, std::string>> entries;

  [[nodiscard]] std::optional<std::string> last(const std::string& key) const;
  [[nodiscard]] std::vector<std::string> all(const std::string& key) const;
  /// Replace every occurrence of key with a single value (appended if absent).
  void set(const std::string& key, const std::string& value);
};

KeyValues parse_key_values(std::istream& in, const std::string& origin);
/// Throws ConfigError when the file cannot be read.
KeyValues read_key_values(const std::filesystem::path& path);

struct MaterialSpec {
  MaterialModel model;
  /// Reference angular frequency in rad/s, when the file declares omega_ref_hz.
  std::optional<double> omega_ref;
};

MaterialSpec parse_material(const KeyValues& kv, const std::string& origin);
MaterialSpec load_material(const std::filesystem::path& path);

/// Parses "1,2,3", "linspace(lo,hi,n)" or "logspace(lo,hi,n)" (endpoints,
/// not exponents). Throws ConfigError on malformed input.
std::vector<double> parse_grid(const std::string& text, const std::string& key);
double parse_number(const std::string& text, const std::string& key);

/// Command-line run: the config file merged with --set overrides (flags win).
struct RunConfig {
  std::string command;
  std::optional<std::filesystem::path> config_path;
  KeyValues params;
  std::filesystem::path out;
  std::string format = "csv";
  int jobs = 0;
  std::optional<double> rel_tol;
  std::optional<double> abs_tol;
  bool si = false;

  [[nodiscard]] double number(const std::string& key, double fallback) const;
  [[nodiscard]] double required_number(const std::string& key) const;
  [[nodiscard]] std::vector<double> grid(const std::string& key, const std::string& fallback) const;
  [[nodiscard]] std::string text(const std::string& key, const std::string& fallback) const;
  [[nodiscard]] int integer(const std::string& key, int fallback) const;
  /// Resolves a path value: as given, else relative to the config file.
  [[nodiscard]] std::filesystem::path path(const std::string& key) const;
  [[nodiscard]] bool has(const std::string& key) const;

  /// Everything that determines the output, for the header echo.
  [[nodiscard]] std::vector<std::pair<std::string, std::string>> echo() const;
};

}  // namespace mqed
