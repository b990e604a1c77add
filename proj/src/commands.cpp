#include "mqed/commands.hpp"

#include <filesystem>
#include <iostream>
#include <map>

#include "mqed/errors.hpp"
#include "mqed/fluctuations.hpp"
#include "mqed/friction.hpp"
#include "mqed/greenfn.hpp"
#include "mqed/kernels.hpp"

namespace mqed::cli {

namespace {

using units::Quantity;

struct Materials {
  std::map<std::string, MaterialSpec> by_key;
  std::optional<double> omega_ref;

  const MaterialModel& get(const std::string& key) const { return by_key.at(key).model; }
};

// Loads the named material keys; `pair` commands accept either left/right or
// a single `material` used for both sides.
Materials load(const RunConfig& cfg, bool pair) {
  Materials m;
  auto load_key = [&](const std::string& key) {
    MaterialSpec spec = load_material(cfg.path(key));
    if (spec.omega_ref) {
      if (m.omega_ref && *m.omega_ref != *spec.omega_ref)
        throw ConfigError("materials declare different omega_ref_hz values");
      m.omega_ref = spec.omega_ref;
    }
    m.by_key[key] = std::move(spec);
  };
  if (pair && !cfg.has("material")) {
    load_key("left");
    load_key("right");
  } else {
    load_key("material");
    if (pair) {
      m.by_key["left"] = m.by_key["material"];
      m.by_key["right"] = m.by_key["material"];
    }
  }
  return m;
}

quad::QuadSpec with_tolerances(quad::QuadSpec spec, const RunConfig& cfg) {
  if (cfg.rel_tol) spec.rel_tol = *cfg.rel_tol;
  if (cfg.abs_tol) spec.abs_tol = *cfg.abs_tol;
  spec.validate();
  return spec;
}

void require_positive(const std::vector<double>& xs, const std::string& key) {
  for (double x : xs)
    if (!(x > 0.0)) throw ConfigError("'" + key + "' values must be > 0");
}

SweepResult cmd_material(const RunConfig& cfg, const Materials& mats) {
  const MaterialModel& model = mats.get("material");
  const auto omega = cfg.grid("omega", "linspace(0.1,5,200)");
  kernels::MaterialTableSpec spec;
  spec.omega_max = cfg.number("omega_max", 50.0);
  spec.spectrum_samples = static_cast<std::size_t>(cfg.integer("spectrum_samples", 50001));
  spec.kk.spec = with_tolerances(spec.kk.spec, cfg);
  require_positive(omega, "omega");
  for (double w : omega)
    if (!(w < spec.omega_max)) throw ConfigError("'omega' values must lie below omega_max");
  SweepResult t;
  t.columns = {{"omega", Quantity::frequency},
               {"re_eps", Quantity::dimensionless},
               {"im_eps", Quantity::dimensionless},
               {"alpha", Quantity::coupling},
               {"kk_residual", Quantity::dimensionless}};
  for (const auto& r : kernels::material_table_parallel(model, omega, spec))
    t.add_row({r.omega, r.re_eps, r.im_eps, r.alpha, r.kk_residual});
  return t;
}

SweepResult cmd_green(const RunConfig& cfg, const Materials& mats) {
  const MaterialModel& model = mats.get("material");
  const auto omega = cfg.grid("omega", "linspace(0.5,2,4)");
  const auto sep = cfg.grid("separation", "0,0.5,1");
  require_positive(omega, "omega");
  SweepResult t;
  t.columns = {{"omega", Quantity::frequency},     {"separation", Quantity::length},
               {"re_g", Quantity::green_1d},        {"im_g", Quantity::green_1d},
               {"re_q", Quantity::wavevector},      {"im_q", Quantity::wavevector}};
  for (double w : omega) {
    for (double d : sep) {
      const GreenEval g = green_1d(0.0, d, w, model);
      t.add_row({w, d, g.g.real(), g.g.imag(), g.branch.value.real(), g.branch.value.imag()});
    }
  }
  return t;
}

SweepResult cmd_correlate(const RunConfig& cfg, const Materials& mats) {
  const MaterialModel& model = mats.get("material");
  const auto omega = cfg.grid("omega", "linspace(0.1,5,50)");
  require_positive(omega, "omega");
  const std::string kind_text = cfg.text("kind", "correlation");
  DensityKind kind;
  if (kind_text == "correlation")
    kind = DensityKind::correlation;
  else if (kind_text == "intensity")
    kind = DensityKind::intensity;
  else if (kind_text == "current")
    kind = DensityKind::current;
  else
    throw ConfigError("'kind' must be correlation, intensity or current");
  const SpectralDensity d =
      kernels::spectral_density_parallel(model, omega, kind, cfg.number("x1", 0.0), cfg.number("x2", 0.0));
  SweepResult t;
  t.columns = {{"omega", Quantity::frequency},
               {"density", kind == DensityKind::current ? Quantity::current_weight : Quantity::correlation_1d},
               {"kind", Quantity::label}};
  for (std::size_t i = 0; i < d.omega.size(); ++i) t.add_row({d.omega[i], d.density[i], to_string(d.kind)});
  return t;
}

SweepResult cmd_casimir(const RunConfig& cfg, const Materials& mats) {
  CavityGeometry1D geo{mats.get("left"), mats.get("right"), 1.0};
  const auto gaps = cfg.grid("gaps", "0.5,1,2");
  require_positive(gaps, "gaps");
  const std::string mode = cfg.text("mode", "imaginary_axis");
  std::vector<CasimirMode> modes;
  if (mode == "imaginary_axis" || mode == "both") modes.push_back(CasimirMode::imaginary_axis);
  if (mode == "real_axis" || mode == "both") modes.push_back(CasimirMode::real_axis);
  if (modes.empty()) throw ConfigError("'mode' must be imaginary_axis, real_axis or both");
  CasimirOptions opts;
  opts.spec = with_tolerances(opts.spec, cfg);
  opts.reflection_orders = cfg.integer("reflection_orders", opts.reflection_orders);
  opts.eta_levels = cfg.integer("eta_levels", opts.eta_levels);
  if (opts.reflection_orders < 1 || opts.eta_levels < 2)
    throw ConfigError("need reflection_orders >= 1 and eta_levels >= 2");
  SweepResult t;
  t.columns = {{"a", Quantity::length},
               {"force", Quantity::force_1d},
               {"error_estimate", Quantity::force_1d},
               {"mode", Quantity::label}};
  std::vector<std::vector<kernels::CasimirRow>> per_mode;
  for (CasimirMode m : modes) {
    opts.mode = m;
    per_mode.push_back(kernels::casimir_sweep_parallel(geo, gaps, opts));
  }
  for (std::size_t i = 0; i < gaps.size(); ++i)
    for (const auto& rows : per_mode)
      t.add_row({rows[i].a, rows[i].result.force, rows[i].result.error_estimate, to_string(rows[i].result.mode)});
  return t;
}

SweepResult cmd_friction(const RunConfig& cfg, const Materials& mats) {
  PlanarScenario base;
  base.left = {mats.get("left"), 0.0};
  base.right = mats.get("right");
  const auto velocities = cfg.grid("velocities", "0.002,0.005,0.01,0.02,0.05");
  const auto gaps = cfg.grid("gaps", "0.5,1,2,4,8");
  require_positive(gaps, "gaps");
  for (double v : velocities)
    if (!(v >= 0.0 && v < 1.0)) throw ConfigError("'velocities' must lie in [0, 1)");
  PlateFrictionOptions opts;
  opts.spec = with_tolerances(opts.spec, cfg);
  SweepResult t;
  t.columns = {{"V", Quantity::velocity},
               {"a", Quantity::length},
               {"T_xy", Quantity::stress_3d},
               {"error_estimate", Quantity::stress_3d},
               {"k_max_used", Quantity::wavevector}};
  for (const auto& p : kernels::friction_sweep_parallel(base, velocities, gaps, opts))
    t.add_row({p.V, p.a, p.result.T_xy, p.result.error_estimate, p.result.k_max});
  return t;
}

SweepResult cmd_rate(const RunConfig& cfg, const Materials& mats) {
  MovingProbe1D probe;
  probe.medium = mats.get("material");
  probe.beta = cfg.number("beta", 1.0);
  probe.omega0 = cfg.number("omega0", 0.5);
  const auto velocities = cfg.grid("velocities", "0.1,0.2,0.3,0.4,0.5");
  for (double v : velocities)
    if (!(v >= 0.0 && v < 1.0)) throw ConfigError("'velocities' must lie in [0, 1)");
  SweepResult t;
  t.columns = {{"V", Quantity::velocity},
               {"rate", Quantity::rate},
               {"rate_error", Quantity::rate},
               {"flux", Quantity::power_1d},
               {"flux_error", Quantity::power_1d}};
  for (const auto& r : kernels::rate_sweep_parallel(probe, velocities))
    t.add_row({r.V, r.rate.value, r.rate.error_estimate, r.flux.value, r.flux.error_estimate});
  return t;
}

}  // namespace

SweepResult run_command(const RunConfig& cfg) {
  const std::string& c = cfg.command;
  const bool pair = c == "casimir" || c == "friction";
  if (c != "material" && c != "green" && c != "correlate" && c != "casimir" && c != "friction" && c != "rate")
    throw ConfigError("unknown command '" + c + "'");
  if (cfg.format != "csv" && cfg.format != "json") throw ConfigError("--format must be csv or json");
  const Materials mats = load(cfg, pair);
  if (cfg.si && !mats.omega_ref) throw ConfigError("--si needs omega_ref_hz in the material file");
  if (!cfg.out.empty()) {
    const auto parent = cfg.out.has_parent_path() ? cfg.out.parent_path() : std::filesystem::path(".");
    if (!std::filesystem::is_directory(parent)) throw IoError("output directory does not exist: " + parent.string());
  }
  kernels::set_jobs(cfg.jobs);

  SweepResult t;
  if (c == "material") t = cmd_material(cfg, mats);
  if (c == "green") t = cmd_green(cfg, mats);
  if (c == "correlate") t = cmd_correlate(cfg, mats);
  if (c == "casimir") t = cmd_casimir(cfg, mats);
  if (c == "friction") t = cmd_friction(cfg, mats);
  if (c == "rate") t = cmd_rate(cfg, mats);
  t.command = c;
  t.config = cfg.echo();
  t.si = cfg.si;
  t.omega_ref = mats.omega_ref.value_or(1.0);
  return t;
}

void emit(const RunConfig& cfg, const SweepResult& table) {
  const std::string text = cfg.format == "json" ? to_json(table) : to_csv(table);
  if (cfg.out.empty()) {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw IoError("failed writing to stdout");
    return;
  }
  write_atomic(cfg.out, text);
}

int run(const RunConfig& cfg) {
  try {
    emit(cfg, run_command(cfg));
    return ok;
  } catch (const IoError& e) {
    std::cerr << "mqed: I/O error: " << e.what() << "\n";
    return io_error;
  } catch (const InputError& e) {
    std::cerr << "mqed: configuration error: " << e.what() << "\n";
    return config_error;
  } catch (const NumericalError& e) {
    std::cerr << "mqed: numerical failure: " << e.what() << "\n";
    return numerical_error;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "mqed: I/O error: " << e.what() << "\n";
    return io_error;
  }
}

}  // namespace mqed::cli
