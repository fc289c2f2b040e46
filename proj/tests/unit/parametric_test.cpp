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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fconv/errors.hpp"
#include "fconv/parametric.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace fconv::parametric {
namespace {

using fconv::testing::Gen;

const model::PumpConfig kReferencePump{33.0, 20.0, 39.0, 2.0};
constexpr double kPi = std::numbers::pi;

double max_abs_diff(const TransferRecord& a, const TransferRecord& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) m = std::max(m, std::abs(a.map[i][j] - b.map[i][j]));
  }
  return m;
}

TEST(Transfer, FreePropagationIsIdentity) {
  const TransferRecord t = transfer({});
  EXPECT_EQ(t.at(kSignal, kSignal), cplx(1.0));
  EXPECT_EQ(t.at(kIdler, kIdler), cplx(1.0));
  EXPECT_EQ(t.at(kSignal, kIdler), cplx(0.0));
  EXPECT_EQ(t.at(kIdler, kSignal), cplx(0.0));
}

TEST(Transfer, QuarterPeriodConvertsFully) {
  const cplx k{0.0, kPi / 2.0};
  const TransferRecord t = transfer({0.0, 0.0, k, k});
  EXPECT_NEAR(std::norm(t.at(kSignal, kIdler)), 1.0, 1e-14);
  EXPECT_NEAR(std::norm(t.at(kIdler, kIdler)), 0.0, 1e-14);
}

TEST(Transfer, RootSatisfiesDefinition) {
  Gen g(11);
  for (int n = 0; n < 200; ++n) {
    const auto c = g.coefficients(5.0);
    const TransferRecord t = transfer(c);
    const cplx w2 = t.q * t.q + c.kappa_sL * c.kappa_iL;
    EXPECT_LE(std::abs(t.w * t.w - w2), 1e-12 * std::max(1.0, std::abs(w2)));
  }
}

TEST(Transfer, MatchesAdaptiveIntegration) {
  Gen g(2024);
  double worst = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const auto c = g.coefficients(5.0);
    const TransferRecord t = transfer(c);
    const auto ref = oracle::integrate_linear_system(c);
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) worst = std::max(worst, std::abs(t.map[i][j] - ref[i][j]));
    }
  }
  EXPECT_LT(worst, 1e-8);
}

TEST(Transfer, BranchIndependence) {
  Gen g(7);
  for (int n = 0; n < 1000; ++n) {
    const auto c = g.coefficients(5.0);
    const TransferRecord a = transfer(c);
    const TransferRecord b = transfer_with_root(c, -a.w);
    EXPECT_LT(max_abs_diff(a, b), 1e-12);
  }
}

TEST(Transfer, MatchesLiteralDownConversionSolution) {
  Gen g(5);
  int checked = 0;
  while (checked < 500) {
    const auto c = g.coefficients(5.0);
    const TransferRecord t = transfer(c);
    if (std::abs(t.w + t.q) < 1e-3 || std::abs(t.w) < 1e-3) continue;
    const auto lit = oracle::literal_down_conversion(c);
    const double scale = std::max(1.0, std::abs(lit[1]));
    EXPECT_LT(std::abs(t.at(kSignal, kIdler) - lit[0]), 1e-12 * std::max(1.0, std::abs(lit[0])));
    EXPECT_LT(std::abs(t.at(kIdler, kIdler) - lit[1]), 1e-11 * scale);
    ++checked;
  }
}

TEST(Transfer, ContinuousAcrossSeriesSwitch) {
  Gen g(99);
  for (int n = 0; n < 200; ++n) {
    const cplx q = g.in_disc(2.0);
    const cplx alpha = g.in_disc(2.0);
    const cplx kappa_s = g.in_disc(2.0) + cplx{0.5, 0.0};
    for (const double r : {0.5 * kSeriesThreshold, 0.999 * kSeriesThreshold,
                           1.001 * kSeriesThreshold, 2.0 * kSeriesThreshold}) {
      const cplx w_target = std::polar(r, g.uniform(-kPi, kPi));
      const model::CouplingCoefficients c{alpha + 2.0 * q, alpha, kappa_s,
                                          (w_target * w_target - q * q) / kappa_s};
      const TransferRecord t = transfer(c);
      const auto ref = oracle::integrate_linear_system(c);
      for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
          EXPECT_LT(std::abs(t.map[i][j] - ref[i][j]), 1e-10) << "|w| = " << std::abs(t.w);
        }
      }
    }
  }
}

TEST(Transfer, Linearity) {
  Gen g(3);
  for (int n = 0; n < 100; ++n) {
    const TransferRecord t = transfer(g.coefficients(3.0));
    const std::array<cplx, 2> in{g.in_disc(2.0), g.in_disc(2.0)};
    const cplx lambda = g.in_disc(4.0);
    const auto a = t.apply({lambda * in[0], lambda * in[1]});
    const auto b = t.apply(in);
    for (std::size_t k = 0; k < 2; ++k) {
      EXPECT_LT(std::abs(a[k] - lambda * b[k]), 1e-12 * std::max(1.0, std::abs(a[k])));
    }
  }
}

TEST(Efficiencies, DecoupledAttenuation) {
  const model::CouplingCoefficients c{cplx{-0.3, 0.2}, cplx{-1.7, 0.4}, 0.0, 0.0};
  const ConversionResult r = efficiencies(c);
  EXPECT_EQ(r.eta_d, 0.0);
  EXPECT_EQ(r.eta_u, 0.0);
  EXPECT_NEAR(r.t_d, std::exp(2.0 * -1.7), 1e-15);
  EXPECT_NEAR(r.t_u, std::exp(2.0 * -0.3), 1e-15);
}

TEST(Efficiencies, InterchangeSymmetry) {
  Gen g(17);
  for (int n = 0; n < 500; ++n) {
    const auto c = g.coefficients(4.0);
    const model::CouplingCoefficients swapped{c.alpha_iL, c.beta_sL, c.kappa_iL, c.kappa_sL};
    const ConversionResult a = efficiencies(c);
    const ConversionResult b = efficiencies(swapped);
    EXPECT_NEAR(a.eta_u, b.eta_d, 1e-13 * std::max(1.0, a.eta_u));
    EXPECT_NEAR(a.t_u, b.t_d, 1e-13 * std::max(1.0, a.t_u));
    EXPECT_GE(a.eta_d, 0.0);
    EXPECT_GE(a.t_d, 0.0);
  }
}

TEST(Efficiencies, StrongCouplingAsymptotics) {
  Gen g(23);
  int checked = 0;
  while (checked < 200) {
    const cplx ks = g.in_disc(3.0);
    const cplx ki = g.in_disc(3.0);
    const double small = std::min(0.1 * std::min(std::abs(ks), std::abs(ki)), 0.004);
    if (std::min(std::abs(ks), std::abs(ki)) < 0.05) continue;
    const model::CouplingCoefficients c{g.in_disc(small), g.in_disc(small), ks, ki};
    const double eta = efficiencies(c).eta_d;
    const cplx r = std::sqrt(ks * ki);
    const double approx = std::norm(std::sqrt(ks / ki) * std::sinh(r));
    if (approx < 1e-3) continue;
    EXPECT_NEAR(eta, approx, 0.02 * approx) << "ks = " << ks << " ki = " << ki;
    ++checked;
  }
}

TEST(Efficiencies, ReferencePoint) {
  const auto c = model::coefficients(kReferencePump, model::ProbeConfig(-21.0, kReferencePump),
                                     model::EnsembleConfig{}, model::default_rb87_rates());
  const ConversionResult r = efficiencies(c);
  EXPECT_NEAR(r.eta_d, 0.92, 0.02);
  EXPECT_LT(std::abs(r.eta_d - r.eta_u), 0.01);
  EXPECT_DOUBLE_EQ(down_conversion(c), r.eta_d);
}

TEST(IdealLimit, Values) {
  auto [e1, t1] = ideal_limit(kPi / 2.0, 1.0);
  EXPECT_NEAR(e1, 1.0, 1e-15);
  EXPECT_NEAR(t1, 0.0, 1e-15);
  auto [e0, t0] = ideal_limit(0.0, 1.0);
  EXPECT_EQ(e0, 0.0);
  EXPECT_EQ(t0, 1.0);
}

TEST(IdealLimit, AgreesWithTransferForImaginaryCoupling) {
  for (const double k : {0.1, 0.7, 1.2, kPi / 2.0, 2.5}) {
    const ConversionResult r = efficiencies(CouplingCoefficients{0.0, 0.0, cplx{0.0, k}, cplx{0.0, k}});
    const auto [eta, t] = ideal_limit(k, 1.0);
    EXPECT_NEAR(r.eta_d, eta, 1e-13);
    EXPECT_NEAR(r.t_d, t, 1e-13);
  }
}

TEST(Dressed, ResonantPumps) {
  const DressedSpectrum d = dressed_spectrum({33.0, 20.0, 0.0, 0.0});
  EXPECT_FALSE(d.predicted);
  const std::array<double, 4> peaks{-53.0, -13.0, 13.0, 53.0};
  const std::array<double, 3> windows{-33.0, 0.0, 33.0};
  EXPECT_EQ(d.peak_positions, peaks);
  EXPECT_EQ(d.window_centers, windows);
}

TEST(Dressed, NoPumpBCollapses) {
  const DressedSpectrum d = dressed_spectrum({33.0, 0.0, 0.0, 0.0});
  EXPECT_EQ(d.peak_positions[0], -33.0);
  EXPECT_EQ(d.peak_positions[1], -33.0);
  EXPECT_EQ(d.peak_positions[2], 33.0);
  EXPECT_EQ(d.peak_positions[3], 33.0);
}

TEST(Dressed, DetunedShifts) {
  const DressedSpectrum d = dressed_spectrum(kReferencePump);
  EXPECT_TRUE(d.predicted);
  EXPECT_NEAR(d.shift_a[0], 57.83, 0.005);
  EXPECT_NEAR(d.shift_a[1], 18.83, 0.005);
  EXPECT_TRUE(std::is_sorted(d.peak_positions.begin(), d.peak_positions.end()));
}

TEST(Dressed, DetunedPredictionMatchesSpectrum) {
  const auto grid = uniform_grid(-100.0, 100.0, 2001);
  const auto table = spectrum(kReferencePump, model::EnsembleConfig{}, model::default_rb87_rates(), grid);
  const auto peaks = absorption_peaks(table);
  const DressedSpectrum d = dressed_spectrum(kReferencePump);
  ASSERT_EQ(peaks.size(), 4u);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(peaks[k], d.peak_positions[k], 0.5);
}

TEST(Spectrum, RowsFollowGrid) {
  const auto grid = uniform_grid(-60.0, 60.0, 121);
  const auto table = spectrum(kReferencePump, model::EnsembleConfig{}, model::default_rb87_rates(), grid);
  ASSERT_EQ(table.rows.size(), grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) EXPECT_EQ(table.rows[k].dw_i, grid[k]);
}

TEST(Spectrum, ParallelMatchesSerial) {
  const auto grid = uniform_grid(-60.0, 60.0, 301);
  const auto rates = model::default_rb87_rates();
  const auto a = spectrum(kReferencePump, model::EnsembleConfig{}, rates, grid, 1);
  const auto b = spectrum(kReferencePump, model::EnsembleConfig{}, rates, grid, 4);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    EXPECT_EQ(a.rows[k].result.eta_d, b.rows[k].result.eta_d);
    EXPECT_EQ(a.rows[k].coeffs.kappa_sL, b.rows[k].coeffs.kappa_sL);
  }
}

TEST(Spectrum, ReferencePointPeaksInLeftWindow) {
  const auto grid = uniform_grid(-60.0, 60.0, 1201);
  const auto table = spectrum(kReferencePump, model::EnsembleConfig{}, model::default_rb87_rates(), grid);
  const auto best = std::max_element(table.rows.begin(), table.rows.end(), [](auto& a, auto& b) {
    return a.result.eta_d < b.result.eta_d;
  });
  EXPECT_NEAR(best->result.eta_d, 0.92, 0.02);
  EXPECT_NEAR(best->dw_i, -20.0, 3.0);
}

TEST(Spectrum, FarDetunedIdlerIsTransmitted) {
  const std::vector<double> grid{-500.0};
  const auto table = spectrum(kReferencePump, model::EnsembleConfig{}, model::default_rb87_rates(), grid);
  EXPECT_GT(table.rows[0].result.t_d, 0.99);
}

TEST(Spectrum, NoPumpsNoConversion) {
  const auto grid = uniform_grid(-60.0, 60.0, 241);
  const auto table =
      spectrum({0.0, 0.0, 0.0, 0.0}, model::EnsembleConfig{}, model::default_rb87_rates(), grid);
  for (const auto& row : table.rows) EXPECT_EQ(row.result.eta_d, 0.0);
}

TEST(Spectrum, RejectsUnorderedGrid) {
  const std::vector<double> grid{1.0, 0.0};
  EXPECT_THROW((void)spectrum(kReferencePump, model::EnsembleConfig{}, model::default_rb87_rates(), grid),
               InvalidArgument);
}

TEST(Spectrum, SingularRowNamesDetuning) {
  model::DecayRates r;
  r.gamma_03 = r.gamma_01 = r.gamma_12 = r.gamma_32 = 1e-14;
  const std::vector<double> grid{-1.0, 0.0, 1.0};
  try {
    (void)spectrum({0.0, 0.0, 10.0, 0.0}, model::EnsembleConfig{}, r, grid);
    FAIL() << "expected SingularDenominator";
  } catch (const SingularDenominator& e) {
    EXPECT_NE(std::string(e.what()).find("dw_i = 0"), std::string::npos) << e.what();
  }
}

}  // namespace
}  // namespace fconv::parametric
