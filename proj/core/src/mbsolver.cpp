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

#include "fconv/mbsolver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fconv/errors.hpp"
#include "fconv/parallel.hpp"

namespace fconv::mb {

namespace {

constexpr cplx kI{0.0, 1.0};

// Rates, detunings and pump amplitudes in units of 1/T_c for one time step.
struct StepCoefficients {
  double g01, g2, g12, g32, g03;
  double delta_1, delta_b, dw_i, dw_s, delta_2;
  double omega_a, omega_b;
};

AtomicState derivative(const AtomicState& s, cplx ei, cplx es, const StepCoefficients& k) {
  const cplx s00 = s.s00();
  const cplx s32 = std::conj(s.s32d);
  const cplx es_c = std::conj(es);
  const cplx ei_c = std::conj(ei);
  const double oa = k.omega_a;
  const double ob = k.omega_b;

  AtomicState d;
  d.s01 = (kI * k.delta_1 - k.g01 / 2.0) * s.s01 + kI * oa * (s00 - s.s11) +
          kI * s.s02 * es_c - kI * std::conj(s.s13) * ei;
  d.s12 = (kI * k.dw_s - (k.g01 + k.g2) / 2.0) * s.s12 - kI * oa * s.s02 +
          kI * (s.s11 - s.s22) * es + kI * ob * s.s13;
  d.s02 = (kI * k.delta_2 - k.g2 / 2.0) * s.s02 - kI * oa * s.s12 + kI * s.s01 * es +
          kI * ob * s.s03 - kI * s32 * ei;
  d.s11 = -k.g01 * s.s11 + k.g12 * s.s22 + kI * oa * std::conj(s.s01) - kI * oa * s.s01 -
          kI * std::conj(s.s12) * es + kI * s.s12 * es_c;
  d.s22 = -k.g2 * s.s22 + kI * std::conj(s.s12) * es - kI * s.s12 * es_c + kI * ob * s.s32d -
          kI * ob * s32;
  d.s33 = -k.g03 * s.s33 + k.g32 * s.s22 - kI * ob * s.s32d + kI * ob * s32 +
          kI * std::conj(s.s03) * ei - kI * s.s03 * ei_c;
  d.s13 = (kI * (k.dw_i - k.delta_1) - (k.g01 + k.g03) / 2.0) * s.s13 - kI * oa * s.s03 -
          kI * s.s32d * es + kI * ob * s.s12 + kI * std::conj(s.s01) * ei;
  d.s03 = (kI * k.dw_i - k.g03 / 2.0) * s.s03 - kI * oa * s.s13 + kI * ob * s.s02 +
          kI * (s00 - s.s33) * ei;
  d.s32d = (-kI * k.delta_b - (k.g03 + k.g2) / 2.0) * s.s32d - kI * s.s13 * es_c +
           kI * ob * (s.s22 - s.s33) + kI * std::conj(s.s02) * ei;
  return d;
}

AtomicState midpoint(const AtomicState& a, const AtomicState& b) {
  return {0.5 * (a.s01 + b.s01), 0.5 * (a.s12 + b.s12), 0.5 * (a.s02 + b.s02),
          0.5 * (a.s11 + b.s11), 0.5 * (a.s22 + b.s22), 0.5 * (a.s33 + b.s33),
          0.5 * (a.s13 + b.s13), 0.5 * (a.s03 + b.s03), 0.5 * (a.s32d + b.s32d)};
}

AtomicState step_from(const AtomicState& a, const AtomicState& d, double h) {
  return {a.s01 + h * d.s01, a.s12 + h * d.s12, a.s02 + h * d.s02,
          a.s11 + h * d.s11, a.s22 + h * d.s22, a.s33 + h * d.s33,
          a.s13 + h * d.s13, a.s03 + h * d.s03, a.s32d + h * d.s32d};
}

bool finite(const AtomicState& s) {
  for (const cplx& v : {s.s01, s.s12, s.s02, s.s11, s.s22, s.s33, s.s13, s.s03, s.s32d}) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

double population_error(const AtomicState& s) {
  double err = 0.0;
  for (const cplx& p : {s.s00(), s.s11, s.s22, s.s33}) {
    err = std::max(err, std::abs(p.imag()));
    err = std::max(err, -p.real());
    err = std::max(err, p.real() - 1.0);
  }
  return err;
}

// Trapezoid march of dE/dz = i * coef * P from the boundary value.
void march(std::vector<cplx>& field, const std::vector<AtomicState>& atoms,
           cplx AtomicState::*polarization, double coef, double dz) {
  const cplx factor = kI * coef * 0.5 * dz;
  for (std::size_t j = 1; j < field.size(); ++j) {
    field[j] = field[j - 1] + factor * (atoms[j - 1].*polarization + atoms[j].*polarization);
  }
}

}  // namespace

CharacteristicScales characteristic_scales(const model::EnsembleConfig& ens,
                                           const model::DecayRates& rates,
                                           double gamma03_lifetime_ns) {
  ens.validate();
  rates.validate();
  if (!(gamma03_lifetime_ns > 0.0)) throw InvalidArgument("gamma_03 lifetime must be > 0");
  const double gamma03 = 1e9 / gamma03_lifetime_ns;  // s^-1
  CharacteristicScales s;
  s.t_c = 1.0 / std::sqrt(gamma03 * kSpeedOfLight * ens.opd / (2.0 * ens.length));
  s.l_c = kSpeedOfLight * s.t_c;
  s.z_extent = ens.length / s.l_c;
  s.gamma03_tc = gamma03 * s.t_c;
  if (ens.density) {
    const double omega_i = 2.0 * std::numbers::pi * kSpeedOfLight / kRb87D1Wavelength;
    s.e_c = std::sqrt(*ens.density * kHbar * omega_i / (2.0 * kEpsilon0));
  }
  return s;
}

PulseShape PulseShape::cw(double amplitude) noexcept {
  PulseShape p;
  p.kind = PulseKind::kCw;
  p.amplitude = amplitude;
  return p;
}

PulseShape PulseShape::ramped(double amplitude, double t_r, double t_s, double duration) {
  if (!(duration >= t_s)) throw InvalidArgument("pulse duration must be >= its rise time t_s");
  PulseShape p;
  p.kind = PulseKind::kRampedSquare;
  p.amplitude = amplitude;
  p.t_r = t_r;
  p.t_s = t_s;
  p.hold = duration - t_s;
  return p;
}

void PulseShape::validate() const {
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) {
    throw InvalidArgument("pulse amplitude must be finite and >= 0");
  }
  if (kind == PulseKind::kRampedSquare) {
    if (!(t_s > 0.0)) throw InvalidArgument("pulse rise time t_s must be > 0");
    if (!(hold >= 0.0)) throw InvalidArgument("pulse hold must be >= 0");
    if (!std::isfinite(t_r)) throw InvalidArgument("pulse t_r must be finite");
  }
}

double envelope(const PulseShape& p, double t) noexcept {
  if (p.kind == PulseKind::kCw) return t >= 0.0 ? p.amplitude : 0.0;
  const double pi = std::numbers::pi;
  if (t <= p.rise_start()) return 0.0;
  if (t < p.t_r + p.t_s / 2.0) return 0.5 * p.amplitude * (1.0 + std::sin(pi * (t - p.t_r) / p.t_s));
  const double fall = p.fall_start();
  if (t <= fall) return p.amplitude;
  if (t < p.end()) {
    const double centre = fall + p.t_s / 2.0;
    return 0.5 * p.amplitude * (1.0 - std::sin(pi * (t - centre) / p.t_s));
  }
  return 0.0;
}

PulseShape enclosing_pump(double amplitude, double t_r, double t_s, const PulseShape& idler) {
  PulseShape p;
  p.kind = PulseKind::kRampedSquare;
  p.amplitude = amplitude;
  p.t_r = t_r;
  p.t_s = t_s;
  const double idler_end = idler.kind == PulseKind::kCw ? 0.0 : idler.end();
  p.hold = std::max(0.0, idler_end + 2.0 * t_s - (t_r + t_s / 2.0));
  return p;
}

void GridSpec::validate() const {
  if (!(dt > 0.0) || !(dz > 0.0)) throw InvalidArgument("grid steps dt and dz must be > 0");
  if (corrector_iters < 0) throw InvalidArgument("corrector_iters must be >= 0");
  if (snapshot_stride == 0) throw InvalidArgument("snapshot_stride must be >= 1");
}

AtomicState AtomicState::ground() noexcept { return AtomicState{}; }

double automatic_time_span(const Scenario& s, const CharacteristicScales& scales) {
  double latest = -1.0;
  for (const PulseShape* p : {&s.pump_a, &s.pump_b, &s.idler_in, &s.signal_in}) {
    if (p->kind == PulseKind::kRampedSquare && p->amplitude > 0.0) latest = std::max(latest, p->end());
  }
  if (latest < 0.0) {
    throw InvalidArgument("all-cw scenario needs an explicit t_span");
  }
  const double tc_ns = scales.t_c * 1e9;
  const double probe_fall =
      std::max(s.idler_in.kind == PulseKind::kRampedSquare ? s.idler_in.t_s : 0.0,
               s.signal_in.kind == PulseKind::kRampedSquare ? s.signal_in.t_s : 0.0);
  const double tail_ns = std::max(5.0 * probe_fall, 200.0 * tc_ns);
  return (latest + tail_ns) / tc_ns;
}

SpaceTimeFields simulate(const Scenario& s, const GridSpec& grid) {
  grid.validate();
  s.pump.validate();
  for (const PulseShape* p : {&s.pump_a, &s.pump_b, &s.idler_in, &s.signal_in}) p->validate();
  const CharacteristicScales scales = characteristic_scales(s.ens, s.rates, s.gamma03_lifetime_ns);

  const double eps = scales.gamma03_tc;
  const double tc_ns = scales.t_c * 1e9;
  const double span = grid.t_span > 0.0 ? grid.t_span : automatic_time_span(s, scales);
  const auto steps = static_cast<std::size_t>(std::ceil(span / grid.dt - 1e-9));
  const auto cells = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(scales.z_extent / grid.dz)));
  const std::size_t sites = cells + 1;
  const double dz = scales.z_extent / static_cast<double>(cells);
  const double r2 = s.ens.coupling_ratio * s.ens.coupling_ratio;

  const model::ProbeConfig probe(s.dw_i, s.pump);
  StepCoefficients k{};
  k.g01 = s.rates.gamma_01 * eps;
  k.g2 = s.rates.gamma_2() * eps;
  k.g12 = s.rates.gamma_12 * eps;
  k.g32 = s.rates.gamma_32 * eps;
  k.g03 = s.rates.gamma_03 * eps;
  k.delta_1 = s.pump.delta_1 * eps;
  k.delta_b = s.pump.delta_b * eps;
  k.dw_i = probe.dw_i() * eps;
  k.dw_s = probe.dw_s() * eps;
  k.delta_2 = probe.delta_2() * eps;

  SpaceTimeFields out;
  out.dt = grid.dt;
  out.dz = dz;
  out.z_extent = scales.z_extent;
  out.tc_ns = tc_ns;
  out.gamma03_tc = eps;
  out.coupling_ratio = s.ens.coupling_ratio;
  for (auto* v : {&out.idler_in, &out.signal_in, &out.idler_out, &out.signal_out}) v->reserve(steps + 1);
  out.tau.reserve(steps + 1);

  std::vector<AtomicState> atoms(sites, AtomicState::ground());
  std::vector<AtomicState> next(sites);
  std::vector<cplx> ei(sites), es(sites), ei_next(sites), es_next(sites);

  auto record = [&](double tau) {
    out.tau.push_back(tau);
    out.idler_in.push_back(ei.front());
    out.signal_in.push_back(es.front());
    out.idler_out.push_back(ei.back());
    out.signal_out.push_back(es.back());
    out.pump_a.push_back(envelope(s.pump_a, tau * tc_ns));
    out.pump_b.push_back(envelope(s.pump_b, tau * tc_ns));
  };
  auto snapshot = [&](double tau) { out.snapshots.push_back({tau, es, ei}); };

  // Fields vanish for tau < 0, so the boundary starts at the envelopes' value at 0.
  std::fill(ei.begin(), ei.end(), cplx{});
  std::fill(es.begin(), es.end(), cplx{});
  record(0.0);
  snapshot(0.0);

  for (std::size_t n = 0; n < steps; ++n) {
    const double tau1 = static_cast<double>(n + 1) * grid.dt;
    const double tau_mid = (static_cast<double>(n) + 0.5) * grid.dt;
    k.omega_a = envelope(s.pump_a, tau_mid * tc_ns) * eps;
    k.omega_b = envelope(s.pump_b, tau_mid * tc_ns) * eps;

    // Predictor: new values guessed equal to the old ones.
    next = atoms;
    ei_next = ei;
    es_next = es;
    ei_next.front() = envelope(s.idler_in, tau1 * tc_ns) * eps;
    es_next.front() = envelope(s.signal_in, tau1 * tc_ns) * eps;

    for (int it = 0; it <= grid.corrector_iters; ++it) {
      for (std::size_t j = 0; j < sites; ++j) {
        const AtomicState mid = midpoint(atoms[j], next[j]);
        const cplx ei_mid = 0.5 * (ei[j] + ei_next[j]);
        const cplx es_mid = 0.5 * (es[j] + es_next[j]);
        next[j] = step_from(atoms[j], derivative(mid, ei_mid, es_mid, k), grid.dt);
      }
      march(ei_next, next, &AtomicState::s03, 1.0, dz);
      march(es_next, next, &AtomicState::s12, r2, dz);
    }

    double worst = 0.0;
    for (std::size_t j = 0; j < sites; ++j) {
      if (!finite(next[j]) || !std::isfinite(std::abs(ei_next[j])) || !std::isfinite(std::abs(es_next[j]))) {
        throw NonFiniteState("non-finite state at tau = " + std::to_string(tau1) +
                             " T_c, site " + std::to_string(j) + "; reduce dt (now " +
                             std::to_string(grid.dt) + ")");
      }
      worst = std::max(worst, population_error(next[j]));
    }
    out.max_population_error = std::max(out.max_population_error, worst);
    if (worst > kPopulationTolerance) {
      throw PopulationViolation("population error " + std::to_string(worst) + " at tau = " +
                                std::to_string(tau1) + " T_c; raise corrector_iters or reduce dt");
    }

    atoms.swap(next);
    ei.swap(ei_next);
    es.swap(es_next);
    record(tau1);
    if ((n + 1) % grid.snapshot_stride == 0) snapshot(tau1);
  }
  out.final_atoms = std::move(atoms);
  return out;
}

namespace {

double energy(const std::vector<cplx>& v, std::size_t n) {
  if (n < 2) return 0.0;
  double acc = 0.5 * (std::norm(v.front()) + std::norm(v[n - 1]));
  for (std::size_t k = 1; k + 1 < n; ++k) acc += std::norm(v[k]);
  return acc;
}

double efficiency_until(const SpaceTimeFields& f, std::size_t n) {
  const double in = energy(f.idler_in, n);
  if (!(in * f.dt > 1e-30)) throw ZeroInput("input idler energy is zero");
  return energy(f.signal_out, n) / in / (f.coupling_ratio * f.coupling_ratio);
}

}  // namespace

double pulse_efficiency(const SpaceTimeFields& f) { return efficiency_until(f, f.tau.size()); }

double tail_sensitivity(const SpaceTimeFields& f) {
  const double full = pulse_efficiency(f);
  const double cut = efficiency_until(f, f.tau.size() - f.tau.size() / 4);
  return full > 0.0 ? std::abs(full - cut) / full : 0.0;
}

double final_conversion_ratio(const SpaceTimeFields& f) {
  if (f.idler_in.empty() || !(std::norm(f.idler_in.back()) > 1e-30)) {
    throw ZeroInput("input idler is zero at the last sample");
  }
  return std::norm(f.signal_out.back()) / std::norm(f.idler_in.back()) /
         (f.coupling_ratio * f.coupling_ratio);
}

ConvergenceReport convergence_report(const Scenario& s, const GridSpec& base, unsigned jobs) {
  std::array<GridSpec, 3> grids{base, base, base};
  grids[1].dt = base.dt / 2.0;
  grids[2].dz = base.dz / 2.0;
  if (base.t_span <= 0.0) {
    const auto scales = characteristic_scales(s.ens, s.rates, s.gamma03_lifetime_ns);
    const double span = automatic_time_span(s, scales);
    for (auto& g : grids) g.t_span = span;
  }
  std::array<double, 3> eta{};
  parallel_for(3, jobs, [&](std::size_t i) { eta[i] = pulse_efficiency(simulate(s, grids[i])); });

  ConvergenceReport r;
  r.eta_base = eta[0];
  r.eta_half_dt = eta[1];
  r.eta_half_dz = eta[2];
  r.rel_change_dt = std::abs(eta[1] - eta[0]) / std::abs(eta[0]);
  r.rel_change_dz = std::abs(eta[2] - eta[0]) / std::abs(eta[0]);
  return r;
}

ExitTrace normalized_exit_trace(const SpaceTimeFields& f, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw InvalidArgument("fraction must be in (0, 1]");
  double peak = 0.0;
  for (const cplx& v : f.idler_in) peak = std::max(peak, std::norm(v));
  if (!(peak > 0.0)) throw ZeroInput("input idler is identically zero");
  std::size_t first = f.idler_in.size();
  std::size_t last = 0;
  for (std::size_t k = 0; k < f.idler_in.size(); ++k) {
    if (std::norm(f.idler_in[k]) >= fraction * peak) {
      first = std::min(first, k);
      last = k;
    }
  }
  ExitTrace trace;
  trace.dt = f.dt * f.gamma03_tc;
  for (std::size_t k = first; k <= last; ++k) {
    trace.samples.push_back(std::norm(f.signal_out[k]) / std::norm(f.idler_in[k]) /
                            (f.coupling_ratio * f.coupling_ratio));
  }
  return trace;
}

}  // namespace fconv::mb
