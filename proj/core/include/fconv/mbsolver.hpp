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

#pragma once

// Maxwell-Bloch propagation of signal and idler pulses through the pumped
// ensemble, in co-moving coordinates (z, tau = t - z/c) scaled by the
// Arecchi-Courtens cooperation time T_c and length L_c = c T_c.
//
// Scaled fields are E~ = g E T_c, so a field of Rabi frequency Omega
// (gamma_03 units) has E~ = Omega * gamma_03 T_c. With that scaling the field
// equations read dE~_s/dz~ = i r^2 sigma_12 and dE~_i/dz~ = i sigma_03.

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fconv/model.hpp"

namespace fconv::mb {

using model::cplx;

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kHbar = 1.054571817e-34;       // J s
inline constexpr double kEpsilon0 = 8.8541878128e-12;  // F/m
inline constexpr double kRb87D1Wavelength = 794.978851e-9;  // idler |0>-|3>, m

struct CharacteristicScales {
  double t_c = 0.0;       ///< cooperation time, s
  double l_c = 0.0;       ///< c * t_c, m
  double z_extent = 0.0;  ///< L / l_c
  double gamma03_tc = 0.0;   ///< gamma_03 * t_c; converts gamma_03 units to 1/T_c units
  std::optional<double> e_c;  ///< sqrt(rho hbar w_i / (2 eps0)), V/m; needs a density
};

/// T_c^-2 = gamma_03 c opd / (2 L), with gamma_03 = 1 / gamma03_lifetime_ns.
[[nodiscard]] CharacteristicScales characteristic_scales(const model::EnsembleConfig& ens,
                                                         const model::DecayRates& rates,
                                                         double gamma03_lifetime_ns);

enum class PulseKind { kCw, kRampedSquare };

/// Temporal envelope. Times in ns, amplitude in gamma_03 units.
/// The rise on (t_r - t_s/2, t_r + t_s/2) is amplitude/2 [1 + sin(pi (t - t_r)/t_s)],
/// followed by `hold` ns at full amplitude and a mirror-image fall.
struct PulseShape {
  PulseKind kind = PulseKind::kRampedSquare;
  double amplitude = 0.0;
  double t_r = 0.0;
  double t_s = 1.0;
  double hold = 0.0;

  static PulseShape cw(double amplitude) noexcept;
  /// Ramped square pulse whose half-amplitude points are `duration` apart.
  static PulseShape ramped(double amplitude, double t_r, double t_s, double duration);

  void validate() const;
  [[nodiscard]] double rise_start() const noexcept { return t_r - t_s / 2.0; }
  [[nodiscard]] double fall_start() const noexcept { return t_r + t_s / 2.0 + hold; }
  [[nodiscard]] double end() const noexcept { return fall_start() + t_s; }
};

[[nodiscard]] double envelope(const PulseShape& shape, double t_ns) noexcept;

/// Square pump-a pulse with the given ramp that encloses `idler`, keeping
/// 2 t_s of full amplitude after the idler has gone.
[[nodiscard]] PulseShape enclosing_pump(double amplitude, double t_r, double t_s,
                                        const PulseShape& idler);

struct GridSpec {
  double dt = 0.5;     ///< in units of T_c
  double dz = 0.001;   ///< in units of L_c
  double t_span = 0.0; ///< in units of T_c; <= 0 selects the automatic window
  int corrector_iters = 2;
  std::size_t snapshot_stride = 10;  ///< interior profiles kept every this many steps

  void validate() const;
};

/// Nine slow atomic variables at one site. sigma_00 = 1 - s11 - s22 - s33.
struct AtomicState {
  cplx s01, s12, s02, s11, s22, s33, s13, s03, s32d;

  [[nodiscard]] cplx s00() const noexcept { return 1.0 - s11 - s22 - s33; }
  static AtomicState ground() noexcept;
};

struct Snapshot {
  double tau = 0.0;
  std::vector<cplx> signal;
  std::vector<cplx> idler;
};

struct SpaceTimeFields {
  double dt = 0.0;        ///< T_c units
  double dz = 0.0;        ///< L_c units, actual step (z_extent / sites)
  double z_extent = 0.0;
  double tc_ns = 0.0;
  double gamma03_tc = 0.0;
  double coupling_ratio = 1.0;

  std::vector<double> tau;            ///< sample times, T_c units, starting at 0
  std::vector<cplx> idler_in;         ///< E~_i(0, tau)
  std::vector<cplx> signal_in;        ///< E~_s(0, tau)
  std::vector<cplx> idler_out;        ///< E~_i(z_extent, tau)
  std::vector<cplx> signal_out;       ///< E~_s(z_extent, tau)
  std::vector<double> pump_a;         ///< Omega_a(tau), gamma_03 units
  std::vector<double> pump_b;
  std::vector<Snapshot> snapshots;    ///< full z profiles every snapshot_stride steps
  std::vector<AtomicState> final_atoms;
  double max_population_error = 0.0;  ///< worst excursion seen (range or imaginary part)

  [[nodiscard]] double t_ns(std::size_t k) const noexcept { return tau[k] * tc_ns; }
};

/// Tolerance of the population realism check.
inline constexpr double kPopulationTolerance = 1e-6;

struct Scenario {
  PulseShape pump_a;
  PulseShape pump_b;
  PulseShape idler_in;
  PulseShape signal_in;
  model::PumpConfig pump;  ///< detunings; Rabi amplitudes come from the pulse shapes
  double dw_i = 0.0;
  model::EnsembleConfig ens;
  model::DecayRates rates;
  double gamma03_lifetime_ns = model::kRb87Gamma03LifetimeNs;
};

/// Time window: latest pulse end plus max(5 fall times, 200 T_c). For cw
/// inputs only the pulsed shapes count.
[[nodiscard]] double automatic_time_span(const Scenario& s, const CharacteristicScales& scales);

/// Throws NonFiniteState or PopulationViolation.
[[nodiscard]] SpaceTimeFields simulate(const Scenario& s, const GridSpec& grid);

/// Trapezoid integral of |E_s(L)|^2 over that of |E_i(0)|^2, in physical
/// field units (divides the scaled ratio by r^2). Throws ZeroInput.
[[nodiscard]] double pulse_efficiency(const SpaceTimeFields& f);

/// Relative change of pulse_efficiency when the last quarter of the time
/// window is left out of both integrals.
[[nodiscard]] double tail_sensitivity(const SpaceTimeFields& f);

/// |E_s(L) / E_i(0)|^2 at the last sample, physical units.
[[nodiscard]] double final_conversion_ratio(const SpaceTimeFields& f);

struct ConvergenceReport {
  double eta_base = 0.0;
  double eta_half_dt = 0.0;
  double eta_half_dz = 0.0;
  double rel_change_dt = 0.0;
  double rel_change_dz = 0.0;
  double threshold = 0.01;
  [[nodiscard]] bool converged() const noexcept {
    return rel_change_dt < threshold && rel_change_dz < threshold;
  }
};

/// Runs (dt, dz), (dt/2, dz) and (dt, dz/2), concurrently when jobs > 1.
[[nodiscard]] ConvergenceReport convergence_report(const Scenario& s, const GridSpec& base,
                                                   unsigned jobs = 1);

struct Modulation {
  double frequency = 0.0;      ///< angular, gamma_03 units
  double depth = 0.0;          ///< oscillation amplitude relative to the trace mean
  double peak_to_floor = 0.0;  ///< spectral peak over median spectral magnitude
  double bin_width = 0.0;      ///< 2 pi / (N dt), gamma_03 units
};

/// Dominant nonzero frequency of `trace` sampled every `dt` (units of
/// 1/gamma_03). A quadratic trend is removed first and lines below two
/// cycles per record are ignored. Throws NoModulation when the peak is below
/// 10x the spectral floor, InvalidArgument for fewer than 64 samples.
[[nodiscard]] Modulation modulation_frequency(std::span<const double> trace, double dt);

/// |E_s(L)|^2 / |E_i(0)|^2 over the samples where the input intensity is at
/// least `fraction` of its peak, and the matching sample spacing (1/gamma_03).
struct ExitTrace {
  std::vector<double> samples;
  double dt = 0.0;
};
[[nodiscard]] ExitTrace normalized_exit_trace(const SpaceTimeFields& f, double fraction = 0.5);

}  // namespace fconv::mb
