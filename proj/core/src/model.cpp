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

#include "fconv/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fconv/errors.hpp"

namespace fconv::model {

namespace {

constexpr cplx kI{0.0, 1.0};

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InvalidArgument(std::string(name) + " must be finite and > 0, got " + std::to_string(v));
  }
}

}  // namespace

void DecayRates::validate() const {
  require_positive(gamma_03, "gamma_03");
  require_positive(gamma_01, "gamma_01");
  require_positive(gamma_12, "gamma_12");
  require_positive(gamma_32, "gamma_32");
}

DecayRates default_rb87_rates() {
  DecayRates r;
  r.gamma_03 = 1.0;
  r.gamma_01 = kRb87Gamma03LifetimeNs / 26.24;
  r.gamma_12 = 1.0 / 2.76;
  r.gamma_32 = 1.0 / 5.38;
  return r;
}

void PumpConfig::validate() const {
  if (!(omega_a >= 0.0) || !(omega_b >= 0.0)) {
    throw InvalidArgument("pump Rabi frequencies must be >= 0");
  }
  if (!std::isfinite(omega_a) || !std::isfinite(omega_b) || !std::isfinite(delta_1) ||
      !std::isfinite(delta_b)) {
    throw InvalidArgument("pump parameters must be finite");
  }
}

void EnsembleConfig::validate() const {
  require_positive(opd, "opd");
  require_positive(length, "length");
  require_positive(coupling_ratio, "coupling_ratio");
  if (density) require_positive(*density, "density");
}

SteadyStateAtoms steady_state(const PumpConfig& pump, const DecayRates& rates) {
  const double a2 = pump.omega_a * pump.omega_a;
  const double g01 = rates.gamma_01;
  SteadyStateAtoms s;
  s.sigma11_s = a2 / (pump.delta_1 * pump.delta_1 + g01 * g01 / 4.0 + 2.0 * a2);
  s.sigma00_s = 1.0 - s.sigma11_s;
  const cplx t01{g01 / 2.0, -pump.delta_1};
  s.sigma01_s = kI * pump.omega_a * (1.0 - 2.0 * s.sigma11_s) / t01;
  return s;
}

cplx Denominators::recompute_d(double a2, double b2) const noexcept {
  return t12 * t03 + t12 * (a2 / t13 + b2 / t02) + t03 * (a2 / t02 + b2 / t13) +
         (a2 - b2) * (a2 - b2) / (t02 * t13);
}

double Denominators::scale() const noexcept {
  return std::max({std::abs(t02), std::abs(t13), std::abs(t12), std::abs(t03)});
}

Denominators denominators(const PumpConfig& pump, const ProbeConfig& probe,
                          const DecayRates& rates) {
  const double g2 = rates.gamma_2();
  Denominators t;
  t.t01 = {rates.gamma_01 / 2.0, -pump.delta_1};
  t.t32c = {(rates.gamma_03 + g2) / 2.0, pump.delta_b};
  t.t02 = {g2 / 2.0, -probe.delta_2()};
  t.t13 = {(rates.gamma_01 + rates.gamma_03) / 2.0, pump.delta_1 - probe.dw_i()};
  t.t12 = {(rates.gamma_01 + g2) / 2.0, -probe.dw_s()};
  t.t03 = {rates.gamma_03 / 2.0, -probe.dw_i()};
  t.d = t.recompute_d(pump.omega_a * pump.omega_a, pump.omega_b * pump.omega_b);
  return t;
}

CouplingCoefficients coefficients(const PumpConfig& pump, const ProbeConfig& probe,
                                  const EnsembleConfig& ens, const DecayRates& rates) {
  const Denominators t = denominators(pump, probe, rates);
  const double scale = t.scale();
  if (!(std::abs(t.d) >= kSingularTolerance * scale * scale)) {
    throw SingularDenominator("|D| = " + std::to_string(std::abs(t.d)) +
                              " below tolerance at dw_i = " + std::to_string(probe.dw_i()));
  }

  const SteadyStateAtoms ss = steady_state(pump, rates);
  const double oa = pump.omega_a;
  const double ob = pump.omega_b;
  const double a2 = oa * oa;
  const double b2 = ob * ob;
  const cplx s01 = ss.sigma01_s;
  const cplx s01d = std::conj(s01);

  // N |g_i|^2 L / c = opd * gamma_03 / 2; g_s = r g_i with both taken real.
  const double r = ens.coupling_ratio;
  const double base = ens.opd * rates.gamma_03 / 2.0;
  const cplx self_s = -base * r * r / t.d;
  const cplx cross = -base * r / t.d;
  const cplx self_i = -base / t.d;

  CouplingCoefficients c;
  c.beta_sL = self_s * (ss.sigma11_s * (t.t03 + a2 / t.t13 + b2 / t.t02) -
                        kI * oa * s01 / t.t02 * (t.t03 + (a2 - b2) / t.t13));
  c.kappa_sL = cross * (ss.sigma00_s * (oa * ob / t.t02 + oa * ob / t.t13) +
                        kI * ob * s01d / t.t13 * (t.t03 + (b2 - a2) / t.t02));
  c.kappa_iL = cross * (ss.sigma11_s * (oa * ob / t.t02 + oa * ob / t.t13) +
                        kI * ob * s01 / t.t02 * (t.t12 + (b2 - a2) / t.t13));
  c.alpha_iL = self_i * (ss.sigma00_s * (t.t12 + a2 / t.t02 + b2 / t.t13) -
                         kI * oa * s01d / t.t13 * (t.t12 + (a2 - b2) / t.t02));
  return c;
}

}  // namespace fconv::model
