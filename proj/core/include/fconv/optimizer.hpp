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

// Global maximization of the down-conversion efficiency over the pump Rabi
// frequencies, pump detunings and idler detuning at fixed optical depth.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fconv/model.hpp"

namespace fconv::optimizer {

/// (omega_a, omega_b, delta_1, delta_b, dw_i), gamma_03 units.
using Params = std::array<double, 5>;

enum ParamIndex : std::size_t { kOmegaA, kOmegaB, kDelta1, kDeltaB, kDwI };

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct Bounds {
  Interval omega_a{0.1, 100.0};
  Interval omega_b{0.1, 100.0};
  Interval delta_1{-100.0, 100.0};
  Interval delta_b{-100.0, 100.0};
  Interval dw_i{-150.0, 150.0};

  void validate() const;
  [[nodiscard]] Params lower() const noexcept;
  [[nodiscard]] Params upper() const noexcept;
  [[nodiscard]] bool contains(const Params& p) const noexcept;
};

struct SearchSettings {
  std::size_t budget = 60000;  ///< objective evaluations over all starts
  std::size_t n_starts = 12;   ///< first three are seeded in the dressed windows
  std::uint64_t seed = 1;
  unsigned jobs = 1;           ///< worker threads across starts
};

struct OptimumRecord {
  double opd = 0.0;
  Params params{};
  double eta_d = 0.0;
  double eta_u = 0.0;
  double t_d = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
  std::size_t starts_used = 0;
  std::uint64_t seed = 0;
  bool exceeds_unity = false;  ///< eta_d > 1 (parametric gain); flagged, never clamped
  double best_start_value = 0.0;  ///< highest objective among the raw start points

  [[nodiscard]] model::PumpConfig pump() const noexcept;
};

/// Down-conversion efficiency at a parameter point; 0 where D is singular.
[[nodiscard]] double objective(const Params& p, const model::EnsembleConfig& ens,
                               const model::DecayRates& rates);

/// Start points: one per dressed window (pumps at a third of their upper
/// bound, resonant), then uniform draws from a generator seeded with `seed`.
[[nodiscard]] std::vector<Params> start_points(const Bounds& bounds, std::size_t n_starts,
                                               std::uint64_t seed);

/// Throws InvalidArgument if opd <= 0 or budget < 1000. Running out of budget
/// is reported through `converged == false`, not thrown.
[[nodiscard]] OptimumRecord optimize_at_opd(double opd, const Bounds& bounds,
                                            const SearchSettings& settings,
                                            const model::EnsembleConfig& ens,
                                            const model::DecayRates& rates);

/// One optimum per optical depth, each warm-started from the previous one.
[[nodiscard]] std::vector<OptimumRecord> efficiency_vs_opd(std::span<const double> opd_list,
                                                           const Bounds& bounds,
                                                           const SearchSettings& settings,
                                                           const model::EnsembleConfig& ens,
                                                           const model::DecayRates& rates);

/// |eta_d(p) - eta_d(p with delta_1, delta_b, dw_i negated)|.
[[nodiscard]] double verify_detuning_symmetry(const OptimumRecord& record,
                                              const model::EnsembleConfig& ens,
                                              const model::DecayRates& rates);
[[nodiscard]] double detuning_symmetry_gap(const Params& p, const model::EnsembleConfig& ens,
                                           const model::DecayRates& rates);

}  // namespace fconv::optimizer
