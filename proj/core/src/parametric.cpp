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

#include "fconv/parametric.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fconv/errors.hpp"
#include "fconv/parallel.hpp"

namespace fconv::parametric {

std::array<cplx, 2> TransferRecord::apply(const std::array<cplx, 2>& in) const noexcept {
  return {map[kSignal][kSignal] * in[kSignal] + map[kSignal][kIdler] * in[kIdler],
          map[kIdler][kSignal] * in[kSignal] + map[kIdler][kIdler] * in[kIdler]};
}

TransferRecord transfer_with_root(const CouplingCoefficients& c, cplx w) {
  TransferRecord t;
  t.q = 0.5 * (c.beta_sL - c.alpha_iL);
  t.w = w;
  const cplx prefactor = std::exp(0.5 * (c.alpha_iL + c.beta_sL));
  const cplx q = t.q;

  cplx sinhc;  // sinh(w) / w
  cplx diag_s; // (w + q) e^w + (w - q) e^-w, over 2w
  cplx diag_i; // (w - q) e^w + (w + q) e^-w, over 2w
  if (std::abs(w) < kSeriesThreshold) {
    const cplx w2 = q * q + c.kappa_sL * c.kappa_iL;
    const cplx cosh_w = 1.0 + w2 / 2.0 + w2 * w2 / 24.0;
    sinhc = 1.0 + w2 / 6.0 + w2 * w2 / 120.0;
    diag_s = cosh_w + q * sinhc;
    diag_i = cosh_w - q * sinhc;
  } else {
    const cplx ep = std::exp(w);
    const cplx em = std::exp(-w);
    sinhc = (ep - em) / (2.0 * w);
    diag_s = ((w + q) * ep + (w - q) * em) / (2.0 * w);
    diag_i = ((w - q) * ep + (w + q) * em) / (2.0 * w);
  }
  t.map[kSignal][kSignal] = prefactor * diag_s;
  t.map[kSignal][kIdler] = prefactor * c.kappa_sL * sinhc;
  t.map[kIdler][kSignal] = prefactor * c.kappa_iL * sinhc;
  t.map[kIdler][kIdler] = prefactor * diag_i;
  return t;
}

TransferRecord transfer(const CouplingCoefficients& c) {
  const cplx q = 0.5 * (c.beta_sL - c.alpha_iL);
  return transfer_with_root(c, std::sqrt(q * q + c.kappa_sL * c.kappa_iL));
}

ConversionResult efficiencies(const TransferRecord& t) {
  ConversionResult r;
  r.eta_d = std::norm(t.at(kSignal, kIdler));
  r.t_d = std::norm(t.at(kIdler, kIdler));
  r.eta_u = std::norm(t.at(kIdler, kSignal));
  r.t_u = std::norm(t.at(kSignal, kSignal));
  return r;
}

ConversionResult efficiencies(const CouplingCoefficients& c) { return efficiencies(transfer(c)); }

double down_conversion(const CouplingCoefficients& c) {
  return std::norm(transfer(c).at(kSignal, kIdler));
}

std::pair<double, double> ideal_limit(double kappa_im, double length_norm) noexcept {
  const double x = kappa_im * length_norm;
  const double s = std::sin(x);
  const double co = std::cos(x);
  return {s * s, co * co};
}

DressedSpectrum dressed_spectrum(const model::PumpConfig& pump) {
  pump.validate();
  DressedSpectrum d;
  const double ra = std::sqrt(pump.delta_1 * pump.delta_1 + 4.0 * pump.omega_a * pump.omega_a);
  const double rb = std::sqrt(pump.delta_b * pump.delta_b + 4.0 * pump.omega_b * pump.omega_b);
  d.shift_a = {std::abs(pump.delta_1 + ra) / 2.0, std::abs(pump.delta_1 - ra) / 2.0};
  d.shift_b = {std::abs(pump.delta_b + rb) / 2.0, std::abs(pump.delta_b - rb) / 2.0};

  d.predicted = pump.delta_1 != 0.0 || pump.delta_b != 0.0;
  if (!d.predicted) {
    const double sum = pump.omega_a + pump.omega_b;
    const double diff = std::abs(pump.omega_a - pump.omega_b);
    d.peak_positions = {-sum, -diff, diff, sum};
  } else {
    // Signed eigen-shifts of the two pump-dressed pairs; the idler resonances
    // are every difference between an upper-pair and a lower-pair level.
    const std::array<double, 2> lower{(-pump.delta_1 + ra) / 2.0, (-pump.delta_1 - ra) / 2.0};
    const std::array<double, 2> upper{(-pump.delta_b + rb) / 2.0, (-pump.delta_b - rb) / 2.0};
    std::size_t k = 0;
    for (double u : upper) {
      for (double l : lower) d.peak_positions[k++] = u - l;
    }
    std::sort(d.peak_positions.begin(), d.peak_positions.end());
  }
  for (std::size_t i = 0; i < 3; ++i) {
    d.window_centers[i] = 0.5 * (d.peak_positions[i] + d.peak_positions[i + 1]);
  }
  return d;
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t n) {
  if (n < 2 || !(hi > lo)) throw InvalidArgument("uniform_grid needs n >= 2 and hi > lo");
  std::vector<double> g(n);
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t k = 0; k < n; ++k) g[k] = lo + step * static_cast<double>(k);
  g.back() = hi;
  return g;
}

SpectrumTable spectrum(const model::PumpConfig& pump, const model::EnsembleConfig& ens,
                       const model::DecayRates& rates, std::span<const double> grid,
                       unsigned jobs) {
  pump.validate();
  ens.validate();
  rates.validate();
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (!(grid[k] > grid[k - 1])) throw InvalidArgument("dw_i grid must be strictly increasing");
  }

  SpectrumTable table;
  table.rows.resize(grid.size());
  parallel_for(grid.size(), jobs, [&](std::size_t k) {
    SpectrumRow& row = table.rows[k];
    row.dw_i = grid[k];
    try {
      row.coeffs = model::coefficients(pump, model::ProbeConfig(grid[k], pump), ens, rates);
    } catch (const SingularDenominator& e) {
      throw SingularDenominator(std::string(e.what()) + " (spectrum row dw_i = " +
                                std::to_string(grid[k]) + ")");
    }
    row.result = efficiencies(row.coeffs);
  });
  return table;
}

std::vector<double> absorption_peaks(const SpectrumTable& table) {
  std::vector<double> peaks;
  const auto& rows = table.rows;
  for (std::size_t k = 1; k + 1 < rows.size(); ++k) {
    const double a = -rows[k].coeffs.alpha_iL.real();
    if (a > -rows[k - 1].coeffs.alpha_iL.real() && a > -rows[k + 1].coeffs.alpha_iL.real()) {
      peaks.push_back(rows[k].dw_i);
    }
  }
  return peaks;
}

}  // namespace fconv::parametric
