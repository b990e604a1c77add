#include "mqed/table.hpp"

#include <unistd.h>

#include <cstdio>
#include <fstream>
#include "json.hpp"
#include <sstream>
#include <system_error>

#include "mqed/errors.hpp"

namespace mqed {

namespace {

double scaled(const SweepResult& t, std::size_t col, double v) {
  return t.si ? v * units::si_factor(t.columns[col].quantity, t.omega_ref) : v;
}

std::string cell_text(const SweepResult& t, std::size_t col, const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return format_number(scaled(t, col, *d));
  return std::get<std::string>(c);
}

}  // namespace

void SweepResult::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw InputError("SweepResult: row width does not match the columns");
  rows.push_back(std::move(row));
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_csv(const SweepResult& t) {
  std::ostringstream os;
  os << "# mqed " << t.command << "\n";
  for (const auto& [k, v] : t.config) os << "# " << k << " = " << v << "\n";
  os << "#units";
  for (const auto& c : t.columns) os << "," << units::unit_label(c.quantity, t.si);
  os << "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i].name;
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(t, i, row[i]);
    os << "\n";
  }
  return os.str();
}

std::string to_json(const SweepResult& t) {
  nlohmann::ordered_json j;
  j["command"] = t.command;
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.config) cfg[k] = v;
  j["config"] = cfg;
  nlohmann::ordered_json units = nlohmann::ordered_json::object();
  for (const auto& c : t.columns) units[c.name] = units::unit_label(c.quantity, t.si);
  j["units"] = units;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (const double* d = std::get_if<double>(&row[i]))
        r[t.columns[i].name] = scaled(t, i, *d);
      else
        r[t.columns[i].name] = std::get<std::string>(row[i]);
    }
    rows.push_back(std::move(r));
  }
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

void write_atomic(const std::filesystem::path& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  const fs::path tmp = dir / ("." + path.filename().string() + ".tmp." + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open temporary output file in " + dir.string());
    out << contents;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError("failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw IoError("cannot move output into place at " + path.string() + ": " + ec.message());
  }
}

}  // namespace mqed
