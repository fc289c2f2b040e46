// Copyright 2026 The fconv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fconv/app/run.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <iterator>
#include <sstream>

#include "fconv/errors.hpp"
#include "fconv/mbsolver.hpp"
#include "fconv/optimizer.hpp"
#include "fconv/parametric.hpp"

#ifndef FCONV_VERSION
#define FCONV_VERSION "0.0.0"
#endif

namespace fconv::app {

namespace {

std::vector<std::string> coefficient_columns() {
  return {"dw_i",        "beta_sL_re",  "beta_sL_im", "alpha_iL_re", "alpha_iL_im",
          "kappa_sL_re", "kappa_sL_im", "kappa_iL_re", "kappa_iL_im", "eta_d",
          "eta_u",       "t_d",         "t_u"};
}

std::vector<double> coefficient_row(double dw_i, const model::CouplingCoefficients& c,
                                    const parametric::ConversionResult& r) {
  return {dw_i,
          c.beta_sL.real(),  c.beta_sL.imag(),  c.alpha_iL.real(), c.alpha_iL.imag(),
          c.kappa_sL.real(), c.kappa_sL.imag(), c.kappa_iL.real(), c.kappa_iL.imag(),
          r.eta_d,           r.eta_u,           r.t_d,             r.t_u};
}

std::vector<std::string> optimum_columns() {
  return {"opd",  "omega_a", "omega_b", "delta_1",     "delta_b",  "dw_i",
          "eta_d", "eta_u",  "t_d",     "evaluations", "converged", "exceeds_unity"};
}

std::vector<double> optimum_row(const optimizer::OptimumRecord& r) {
  using namespace optimizer;
  return {r.opd,
          r.params[kOmegaA],
          r.params[kOmegaB],
          r.params[kDelta1],
          r.params[kDeltaB],
          r.params[kDwI],
          r.eta_d,
          r.eta_u,
          r.t_d,
          static_cast<double>(r.evaluations),
          r.converged ? 1.0 : 0.0,
          r.exceeds_unity ? 1.0 : 0.0};
}

OutputTable run_coeffs(const RunConfig& c) {
  const auto pump = c.pump();
  const auto coeffs =
      model::coefficients(pump, model::ProbeConfig(c.dw_i, pump), c.ensemble(), c.rates);
  const auto t = parametric::transfer(coeffs);
  OutputTable table(coefficient_columns());
  table.add_row(coefficient_row(c.dw_i, coeffs, parametric::efficiencies(t)));
  table.add_scalar("dw_s", model::ProbeConfig(c.dw_i, pump).dw_s());
  table.add_scalar("w_re", t.w.real());
  table.add_scalar("w_im", t.w.imag());
  return table;
}

OutputTable run_spectrum(const RunConfig& c) {
  const auto grid = parametric::uniform_grid(c.dw_min, c.dw_max, c.points);
  const auto spec = parametric::spectrum(c.pump(), c.ensemble(), c.rates, grid, c.jobs);
  OutputTable table(coefficient_columns());
  std::size_t best = 0;
  for (std::size_t k = 0; k < spec.rows.size(); ++k) {
    const auto& row = spec.rows[k];
    table.add_row(coefficient_row(row.dw_i, row.coeffs, row.result));
    if (row.result.eta_d > spec.rows[best].result.eta_d) best = k;
  }
  table.add_scalar("eta_d_max", spec.rows[best].result.eta_d);
  table.add_scalar("dw_i_at_max", spec.rows[best].dw_i);
  const auto peaks = parametric::absorption_peaks(spec);
  table.add_scalar("absorption_peaks", static_cast<double>(peaks.size()));
  for (std::size_t k = 0; k < peaks.size(); ++k) {
    table.add_scalar(fmt::format("absorption_peak_{}", k), peaks[k]);
  }
  return table;
}

OutputTable run_dressed(const RunConfig& c) {
  const auto d = parametric::dressed_spectrum(c.pump());
  OutputTable table({"peak", "dw_i"});
  for (std::size_t k = 0; k < d.peak_positions.size(); ++k) {
    table.add_row({static_cast<double>(k), d.peak_positions[k]});
  }
  for (std::size_t k = 0; k < d.window_centers.size(); ++k) {
    table.add_scalar(fmt::format("window_{}", k), d.window_centers[k]);
  }
  table.add_scalar("predicted", d.predicted ? "true" : "false");
  return table;
}

OutputTable run_optimize(const RunConfig& c) {
  const auto rec =
      optimizer::optimize_at_opd(c.opd, c.bounds, c.search(), c.ensemble(), c.rates);
  OutputTable table(optimum_columns());
  table.add_row(optimum_row(rec));
  table.add_scalar("symmetry_gap", optimizer::verify_detuning_symmetry(rec, c.ensemble(), c.rates));
  table.add_scalar("best_start_value", rec.best_start_value);
  return table;
}

OutputTable run_opd_curve(const RunConfig& c) {
  const auto records =
      optimizer::efficiency_vs_opd(c.opd_list, c.bounds, c.search(), c.ensemble(), c.rates);
  OutputTable table(optimum_columns());
  for (const auto& r : records) table.add_row(optimum_row(r));
  return table;
}

OutputTable run_pulse(const RunConfig& c) {
  const mb::Scenario s = c.mb_scenario();
  const mb::SpaceTimeFields f = mb::simulate(s, c.grid);
  const double eps2 = f.gamma03_tc * f.gamma03_tc;
  const double r2 = f.coupling_ratio * f.coupling_ratio;
  OutputTable table({"t_ns", "idler_in", "signal_out", "idler_out", "pump_a", "pump_b"});
  for (std::size_t k = 0; k < f.tau.size(); ++k) {
    table.add_row({f.t_ns(k), std::norm(f.idler_in[k]) / eps2, std::norm(f.signal_out[k]) / eps2 / r2,
                   std::norm(f.idler_out[k]) / eps2, f.pump_a[k], f.pump_b[k]});
  }
  table.add_scalar("eta_d", mb::pulse_efficiency(f));
  table.add_scalar("eta_d_tail_sensitivity", mb::tail_sensitivity(f));
  table.add_scalar("intensity_units", "gamma_03^2, signal divided by coupling_ratio^2");
  table.add_scalar("tc_ns", f.tc_ns);
  table.add_scalar("z_extent", f.z_extent);
  table.add_scalar("max_population_error", f.max_population_error);
  try {
    const auto trace = mb::normalized_exit_trace(f);
    const auto m = mb::modulation_frequency(trace.samples, trace.dt);
    table.add_scalar("modulation_frequency", m.frequency);
    table.add_scalar("modulation_depth", m.depth);
  } catch (const NoModulation&) {
    table.add_scalar("modulation_frequency", "none");
  } catch (const InvalidArgument&) {
    table.add_scalar("modulation_frequency", "none");
  }
  return table;
}

OutputTable run_convergence(const RunConfig& c) {
  const auto r = mb::convergence_report(c.mb_scenario(), c.grid, c.jobs);
  OutputTable table({"dt", "dz", "eta_d"});
  table.add_row({c.grid.dt, c.grid.dz, r.eta_base});
  table.add_row({c.grid.dt / 2.0, c.grid.dz, r.eta_half_dt});
  table.add_row({c.grid.dt, c.grid.dz / 2.0, r.eta_half_dz});
  table.add_scalar("rel_change_dt", r.rel_change_dt);
  table.add_scalar("rel_change_dz", r.rel_change_dz);
  table.add_scalar("converged", r.converged() ? "true" : "false");
  return table;
}

void echo_config(std::ostream& err, const RunConfig& config) {
  err << "resolved config:\n";
  std::istringstream in(serialize_config(config));
  for (std::string line; std::getline(in, line);) err << "  " << line << "\n";
}

}  // namespace

std::string version() { return FCONV_VERSION; }

OutputTable execute(const RunConfig& config) {
  OutputTable table = [&] {
    switch (config.scenario) {
      case Scenario::kCoeffs: return run_coeffs(config);
      case Scenario::kSpectrum: return run_spectrum(config);
      case Scenario::kDressed: return run_dressed(config);
      case Scenario::kOptimize: return run_optimize(config);
      case Scenario::kOpdCurve: return run_opd_curve(config);
      case Scenario::kPulse: return run_pulse(config);
      case Scenario::kConvergence: return run_convergence(config);
    }
    throw InvalidArgument("unknown scenario");
  }();
  table.set_metadata(version(), serialize_config(config), config.seed);
  return table;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    execute(config).write(out);
    return kExitOk;
  } catch (const NumericalError& e) {
    err << "fconv: numerical failure: " << e.what() << "\n";
    echo_config(err, config);
    return kExitNumerical;
  } catch (const Error& e) {
    err << "fconv: invalid configuration: " << e.what() << "\n";
    echo_config(err, config);
    return kExitConfig;
  }
}

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Four-wave-mixing frequency conversion in a diamond-configuration ensemble",
               "fconv"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1, 1);

  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  unsigned jobs = 0;
  std::vector<std::string> sets;
  app.add_option("--config", config_path, "YAML run configuration")->check(CLI::ExistingFile);
  app.add_option("--out", out_path, "output CSV path (default: stdout)");
  app.add_option("--seed", seed, "optimizer seed, overrides the config");
  app.add_option("--jobs", jobs, "worker threads, overrides the config")
      ->check(CLI::Range(1u, 1024u));
  app.add_option("--set", sets, "override a config key, key=value (dotted for pulse shapes)");

  const std::pair<const char*, const char*> commands[] = {
      {"coeffs", "coupling coefficients and efficiencies at one detuning"},
      {"spectrum", "coefficients and efficiencies over an idler-detuning grid"},
      {"dressed", "dressed-state absorption peaks and window centres"},
      {"optimize", "maximize the down-conversion efficiency at one optical depth"},
      {"opd-curve", "optimized efficiency over a list of optical depths"},
      {"pulse", "Maxwell-Bloch propagation of the configured pulses"},
      {"convergence", "pulse efficiency on the base grid and with each step halved"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  RunConfig config;
  try {
    std::string text;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ConfigError("cannot read " + config_path);
      text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    std::vector<Override> overrides;
    overrides.emplace_back("scenario", app.get_subcommands().front()->get_name());
    for (const std::string& s : sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + s + "'");
      overrides.emplace_back(s.substr(0, eq), s.substr(eq + 1));
    }
    if (app.count("--seed") > 0) overrides.emplace_back("seed", std::to_string(seed));
    if (app.count("--jobs") > 0) overrides.emplace_back("jobs", std::to_string(jobs));
    config = parse_config(text, overrides);
  } catch (const ConfigError& e) {
    err << "fconv: config error: " << e.what() << "\n";
    return kExitConfig;
  }

  if (out_path.empty()) return run(config, out, err);
  std::ostringstream buffer;
  const int code = run(config, buffer, err);
  if (code != kExitOk) return code;
  std::ofstream file(out_path, std::ios::binary);
  if (!(file << buffer.str())) {
    err << "fconv: cannot write " << out_path << "\n";
    return kExitConfig;
  }
  return kExitOk;
}

}  // namespace fconv::app
