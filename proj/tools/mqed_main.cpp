// Command-line front end: mqed <command> [--config FILE] [--set key=value]... [flags]

#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mqed/commands.hpp"
#include "mqed/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Macroscopic QED numerics: permittivity, Green functions, Casimir stress, quantum friction"};
  app.require_subcommand(1, 1);

  mqed::RunConfig cfg;
  std::string config_file;
  std::vector<std::string> overrides;
  double rel_tol = 0.0;
  double abs_tol = 0.0;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"material", "permittivity table with Kramers-Kronig residuals"},
      {"green", "1D Green function over frequency and separation"},
      {"correlate", "field or current correlation spectral density"},
      {"casimir", "1D Casimir force versus gap"},
      {"friction", "sliding-plate friction stress over a (V, a) grid"},
      {"rate", "moving-particle excitation rate and emitted flux versus V"}};
  std::vector<CLI::App*> subs;
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_file, "key = value configuration file");
    sub->add_option("--set", overrides, "override a configuration key (key=value); repeatable");
    sub->add_option("--out", cfg.out, "output file (default: stdout)");
    sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--jobs", cfg.jobs, "worker threads for sweeps");
    sub->add_option("--rel-tol", rel_tol, "relative quadrature tolerance");
    sub->add_option("--abs-tol", abs_tol, "absolute quadrature tolerance");
    sub->add_flag("--si", cfg.si, "write SI values (needs omega_ref_hz)");
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : mqed::cli::config_error;
  }

  for (CLI::App* sub : subs)
    if (sub->parsed()) {
      cfg.command = sub->get_name();
      if (sub->count("--rel-tol")) cfg.rel_tol = rel_tol;
      if (sub->count("--abs-tol")) cfg.abs_tol = abs_tol;
    }

  try {
    if (!config_file.empty()) {
      cfg.config_path = config_file;
      cfg.params = mqed::read_key_values(config_file);
    }
    for (const auto& o : overrides) {
      std::istringstream line(o);
      const mqed::KeyValues kv = mqed::parse_key_values(line, "--set");
      if (kv.entries.size() != 1) throw mqed::ConfigError("--set expects key=value");
      cfg.params.set(kv.entries[0].first, kv.entries[0].second);
    }
  } catch (const mqed::ConfigError& e) {
    std::cerr << "mqed: configuration error: " << e.what() << "\n";
    return mqed::cli::config_error;
  }
  return mqed::cli::run(cfg);
}
