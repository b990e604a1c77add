#include "mqed/runconfig.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "mqed/errors.hpp"
#include "mqed/table.hpp"
#include "mqed/units.hpp"

namespace mqed {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) parts.push_back(trim(cur));
  return parts;
}

}  // namespace

std::optional<std::string> KeyValues::last(const std::string& key) const {
  for (auto it = entries.rbegin(); it != entries.rend(); ++it)
    if (it->first == key) return it->second;
  return std::nullopt;
}

std::vector<std::string> KeyValues::all(const std::string& key) const {
  std::vector<std::string> out;
  for (const auto& [k, v] : entries)
    if (k == key) out.push_back(v);
  return out;
}

void KeyValues::set(const std::string& key, const std::string& value) {
  auto it = std::find_if(entries.begin(), entries.end(), [&](const auto& e) { return e.first == key; });
  if (it == entries.end()) {
    entries.emplace_back(key, value);
    return;
  }
  it->second = value;
  entries.erase(std::remove_if(it + 1, entries.end(), [&](const auto& e) { return e.first == key; }), entries.end());
}

KeyValues parse_key_values(std::istream& in, const std::string& origin) {
  KeyValues kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
    kv.entries.emplace_back(key, trim(line.substr(eq + 1)));
  }
  return kv;
}

KeyValues read_key_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path.string());
  return parse_key_values(in, path.string());
}

double parse_number(const std::string& text, const std::string& key) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("'" + key + "': not a number: '" + text + "'");
  }
}

std::vector<double> parse_grid(const std::string& raw, const std::string& key) {
  const std::string text = trim(raw);
  if (text.empty()) return {};
  for (const char* fn : {"linspace", "logspace"}) {
    const std::string name(fn);
    if (text.rfind(name + "(", 0) == 0) {
      if (text.back() != ')') throw ConfigError("'" + key + "': missing ')'");
      const auto args = split(text.substr(name.size() + 1, text.size() - name.size() - 2), ',');
      if (args.size() != 3) throw ConfigError("'" + key + "': " + name + " takes (lo, hi, n)");
      const double lo = parse_number(args[0], key);
      const double hi = parse_number(args[1], key);
      const double nd = parse_number(args[2], key);
      if (nd < 1 || nd != std::floor(nd)) throw ConfigError("'" + key + "': n must be a positive integer");
      const auto n = static_cast<std::size_t>(nd);
      if (name == "logspace" && !(lo > 0.0 && hi > 0.0)) throw ConfigError("'" + key + "': logspace needs positive ends");
      std::vector<double> out(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double t = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
        out[i] = name == "linspace" ? lo + (hi - lo) * t : lo * std::pow(hi / lo, t);
      }
      return out;
    }
  }
  std::vector<double> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_number(part, key));
  return out;
}

MaterialSpec parse_material(const KeyValues& kv, const std::string& origin) {
  static const std::vector<std::string> known = {"kind", "omega0", "omegaP", "gamma", "sigma", "eps_b", "omega_ref_hz"};
  for (const auto& [k, v] : kv.entries)
    if (std::find(known.begin(), known.end(), k) == known.end())
      throw ConfigError(origin + ": unknown material key '" + k + "'");
  const auto kind = kv.last("kind");
  if (!kind) throw ConfigError(origin + ": missing 'kind'");
  MaterialSpec spec;
  if (const auto hz = kv.last("omega_ref_hz")) {
    const double f = parse_number(*hz, "omega_ref_hz");
    if (!(f > 0.0)) throw ConfigError(origin + ": omega_ref_hz must be > 0");
    spec.omega_ref = units::omega_ref_from_hz(f);
  }
  try {
    if (*kind == "vacuum") {
      spec.model = MaterialModel::vacuum();
    } else if (*kind == "conductivity") {
      const auto sigma = kv.last("sigma");
      if (!sigma) throw ConfigError(origin + ": conductivity needs 'sigma'");
      const auto eps_b = kv.last("eps_b");
      spec.model = MaterialModel::conductivity(parse_number(*sigma, "sigma"),
                                               eps_b ? parse_number(*eps_b, "eps_b") : 1.0);
    } else if (*kind == "lorentz") {
      const auto w0 = kv.all("omega0");
      const auto wp = kv.all("omegaP");
      const auto g = kv.all("gamma");
      if (w0.empty() || w0.size() != wp.size() || w0.size() != g.size())
        throw ConfigError(origin + ": lorentz needs equal numbers of omega0, omegaP, gamma");
      std::vector<LorentzResonance> rs;
      for (std::size_t i = 0; i < w0.size(); ++i)
        rs.push_back({parse_number(w0[i], "omega0"), parse_number(wp[i], "omegaP"), parse_number(g[i], "gamma")});
      spec.model = MaterialModel::lorentz(std::move(rs));
    } else {
      throw ConfigError(origin + ": unknown kind '" + *kind + "'");
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const InputError& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  return spec;
}

MaterialSpec load_material(const std::filesystem::path& path) {
  return parse_material(read_key_values(path), path.string());
}

bool RunConfig::has(const std::string& key) const { return params.last(key).has_value(); }

double RunConfig::number(const std::string& key, double fallback) const {
  const auto v = params.last(key);
  return v ? parse_number(*v, key) : fallback;
}

double RunConfig::required_number(const std::string& key) const {
  const auto v = params.last(key);
  if (!v) throw ConfigError("missing required key '" + key + "'");
  return parse_number(*v, key);
}

std::vector<double> RunConfig::grid(const std::string& key, const std::string& fallback) const {
  return parse_grid(params.last(key).value_or(fallback), key);
}

std::string RunConfig::text(const std::string& key, const std::string& fallback) const {
  return params.last(key).value_or(fallback);
}

int RunConfig::integer(const std::string& key, int fallback) const {
  const auto v = params.last(key);
  if (!v) return fallback;
  const double d = parse_number(*v, key);
  if (d != std::floor(d) || std::abs(d) > 1e9) throw ConfigError("'" + key + "': expected an integer");
  return static_cast<int>(d);
}

std::filesystem::path RunConfig::path(const std::string& key) const {
  const auto v = params.last(key);
  if (!v) throw ConfigError("missing required key '" + key + "'");
  std::filesystem::path p(*v);
  if (p.is_relative() && !std::filesystem::exists(p) && config_path) {
    const auto alt = config_path->parent_path() / p;
    if (std::filesystem::exists(alt)) return alt;
  }
  return p;
}

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
  std::vector<std::pair<std::string, std::string>> out;
  // The output path and job count do not change the numbers, so they are
  // left out to keep repeated runs byte-identical.
  out.emplace_back("format", format);
  out.emplace_back("si", si ? "true" : "false");
  if (rel_tol) out.emplace_back("rel_tol", format_number(*rel_tol));
  if (abs_tol) out.emplace_back("abs_tol", format_number(*abs_tol));
  for (const auto& e : params.entries) out.push_back(e);
  return out;
}

}  // namespace mqed
