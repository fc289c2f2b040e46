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

// Closed-form propagation of the coupled signal/idler equations
//
//   dE_s/dzeta = beta_sL  E_s + kappa_sL E_i
//   dE_i/dzeta = kappa_iL E_s + alpha_iL E_i,      zeta = z / L in [0, 1],
//
// conversion efficiencies, dressed-state absorption windows and detuning
// spectra.

#include <array>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "fconv/model.hpp"

namespace fconv::parametric {

using model::cplx;
using model::CouplingCoefficients;

/// Index of a field in the transfer map.
enum Field : std::size_t { kSignal = 0, kIdler = 1 };

/// Transfer map exp(M) from (E_s(0), E_i(0)) to (E_s(L), E_i(L)).
/// map[out][in], so map[kSignal][kIdler] is the down-conversion amplitude.
struct TransferRecord {
  cplx q;  ///< (beta_sL - alpha_iL) / 2
  cplx w;  ///< principal sqrt(q^2 + kappa_sL kappa_iL)
  std::array<std::array<cplx, 2>, 2> map{};

  [[nodiscard]] const cplx& at(Field out, Field in) const noexcept { return map[out][in]; }
  [[nodiscard]] std::array<cplx, 2> apply(const std::array<cplx, 2>& input) const noexcept;
};

/// |w| below which cosh(w) and sinh(w)/w switch to their Taylor series.
inline constexpr double kSeriesThreshold = 1e-4;

[[nodiscard]] TransferRecord transfer(const CouplingCoefficients& c);

/// Same map built from an explicitly chosen root w (either sign).
/// Both roots give the same entries.
[[nodiscard]] TransferRecord transfer_with_root(const CouplingCoefficients& c, cplx w);

struct ConversionResult {
  double eta_d = 0.0;  ///< |E_s(L) / E_i(0)|^2 with E_s(0) = 0
  double eta_u = 0.0;  ///< |E_i(L) / E_s(0)|^2 with E_i(0) = 0
  double t_d = 0.0;    ///< |E_i(L) / E_i(0)|^2 with E_s(0) = 0
  double t_u = 0.0;    ///< |E_s(L) / E_s(0)|^2 with E_i(0) = 0
};

[[nodiscard]] ConversionResult efficiencies(const CouplingCoefficients& c);
[[nodiscard]] ConversionResult efficiencies(const TransferRecord& t);

/// Down-conversion efficiency only; the optimizer objective.
[[nodiscard]] double down_conversion(const CouplingCoefficients& c);

/// Lossless, purely imaginary coupling: (sin^2 x, cos^2 x), x = kappa_im * L.
[[nodiscard]] std::pair<double, double> ideal_limit(double kappa_im, double length_norm) noexcept;

/// Dressed-state picture of the idler transition.
struct DressedSpectrum {
  std::array<double, 2> shift_a{};        ///< |delta_1 +- sqrt(delta_1^2 + 4 Omega_a^2)| / 2
  std::array<double, 2> shift_b{};        ///< same for (delta_b, Omega_b)
  std::array<double, 4> peak_positions{}; ///< idler resonances, ascending
  std::array<double, 3> window_centers{}; ///< midpoints between adjacent peaks
  bool predicted = false;                 ///< true when either pump is detuned
};

[[nodiscard]] DressedSpectrum dressed_spectrum(const model::PumpConfig& pump);

struct SpectrumRow {
  double dw_i = 0.0;
  CouplingCoefficients coeffs;
  ConversionResult result;
};

struct SpectrumTable {
  std::vector<SpectrumRow> rows;
};

/// n uniform points over [lo, hi].
[[nodiscard]] std::vector<double> uniform_grid(double lo, double hi, std::size_t n = 1201);

/// Evaluates every grid point. jobs > 1 spreads rows over worker threads;
/// the result is identical to the sequential one.
[[nodiscard]] SpectrumTable spectrum(const model::PumpConfig& pump,
                                     const model::EnsembleConfig& ens,
                                     const model::DecayRates& rates,
                                     std::span<const double> dw_i_grid, unsigned jobs = 1);

/// Idler detunings of the strict local maxima of -Re(alpha_iL).
[[nodiscard]] std::vector<double> absorption_peaks(const SpectrumTable& table);

}  // namespace fconv::parametric
