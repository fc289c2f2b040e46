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

// Physical parameters of the diamond-configuration ensemble and the
// linear-response coefficients of the coupled signal/idler equations.
//
// Every frequency is expressed in units of gamma_03, the |3> -> |0> decay
// rate. Rabi frequencies follow the half-standard convention: Omega here is
// d * E / (2 hbar), half of the usual definition.

#include <complex>
#include <optional>

namespace fconv::model {

using cplx = std::complex<double>;

/// Natural decay rates in units of gamma_03.
struct DecayRates {
  double gamma_03 = 1.0;
  double gamma_01 = 1.0;
  double gamma_12 = 1.0;
  double gamma_32 = 1.0;

  /// Total decay rate out of |2>.
  [[nodiscard]] double gamma_2() const noexcept { return gamma_12 + gamma_32; }

  /// Throws InvalidArgument unless every rate is strictly positive.
  void validate() const;
};

/// 87Rb rates for the (5S1/2, 5P3/2, 6S1/2, 5P1/2) diamond.
[[nodiscard]] DecayRates default_rb87_rates();

/// Lifetime 1/gamma_03 of the 87Rb 5P1/2 level in nanoseconds.
inline constexpr double kRb87Gamma03LifetimeNs = 27.7;

/// Pump Rabi frequencies and detunings, gamma_03 units, half-standard Rabi
/// convention. delta_1 = w_a - w_1, delta_b = w_b - w_23.
struct PumpConfig {
  double omega_a = 0.0;
  double omega_b = 0.0;
  double delta_1 = 0.0;
  double delta_b = 0.0;

  void validate() const;
};

/// Probe detunings. Only the idler detuning is free; energy conservation
/// fixes the signal detuning and the two-photon detuning.
class ProbeConfig {
 public:
  ProbeConfig() = default;
  ProbeConfig(double dw_i, const PumpConfig& pump) noexcept
      : dw_i_(dw_i),
        dw_s_(dw_i - pump.delta_1 + pump.delta_b),
        delta_2_(pump.delta_1 + dw_s_) {}

  [[nodiscard]] double dw_i() const noexcept { return dw_i_; }
  [[nodiscard]] double dw_s() const noexcept { return dw_s_; }
  [[nodiscard]] double delta_2() const noexcept { return delta_2_; }

 private:
  double dw_i_ = 0.0;
  double dw_s_ = 0.0;
  double delta_2_ = 0.0;
};

/// Ensemble geometry. opd is the resonant optical depth rho * sigma * L.
struct EnsembleConfig {
  double opd = 150.0;
  double length = 6e-3;           ///< meters
  double coupling_ratio = 1.0;    ///< r = |g_s| / |g_i|
  std::optional<double> density;  ///< m^-3, reporting only

  void validate() const;
};

/// Zeroth-order (probe-free) steady state of the pump-a driven |0>-|1> pair.
struct SteadyStateAtoms {
  double sigma11_s = 0.0;
  double sigma00_s = 1.0;
  cplx sigma01_s{};
};

[[nodiscard]] SteadyStateAtoms steady_state(const PumpConfig& pump, const DecayRates& rates);

/// Complex linewidth/detuning factors of the linearized steady state, and D.
struct Denominators {
  cplx t01;
  cplx t32c;  ///< T_32^*
  cplx t02;
  cplx t13;
  cplx t12;
  cplx t03;
  cplx d;

  /// D evaluated again from the stored T-factors and the pump intensities.
  [[nodiscard]] cplx recompute_d(double omega_a_sq, double omega_b_sq) const noexcept;
  /// Largest |T| among the factors entering D.
  [[nodiscard]] double scale() const noexcept;
};

[[nodiscard]] Denominators denominators(const PumpConfig& pump, const ProbeConfig& probe,
                                        const DecayRates& rates);

/// Self- and cross-coupling coefficients multiplied by the ensemble length.
/// dE_s/dz = beta_s E_s + kappa_s E_i, dE_i/dz = kappa_i E_s + alpha_i E_i.
struct CouplingCoefficients {
  cplx beta_sL;
  cplx alpha_iL;
  cplx kappa_sL;
  cplx kappa_iL;
};

/// Relative singularity threshold: |D| < kSingularTolerance * (max |T|)^2.
inline constexpr double kSingularTolerance = 1e-12;

/// Throws SingularDenominator when D vanishes on the T-factor scale.
[[nodiscard]] CouplingCoefficients coefficients(const PumpConfig& pump, const ProbeConfig& probe,
                                                const EnsembleConfig& ens,
                                                const DecayRates& rates);

}  // namespace fconv::model
