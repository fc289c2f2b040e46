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

// Independent reference computations used to check the library.

#include <array>
#include <complex>

#include "fconv/model.hpp"
#include "fconv/optimizer.hpp"

namespace fconv::oracle {

using cplx = std::complex<double>;
using Map2 = std::array<std::array<cplx, 2>, 2>;

/// Transfer map of d/dx (E_s, E_i) = [[beta, kappa_s], [kappa_i, alpha]] (E_s, E_i)
/// over x in [0, 1], by adaptive Dormand-Prince 5(4) on each basis vector.
/// Indexed [out][in].
Map2 integrate_linear_system(const model::CouplingCoefficients& c, double rtol = 1e-13,
                             double atol = 1e-15);

struct TwoLevelSteadyState {
  double excited = 0.0;
  double coherence_modulus = 0.0;
};

/// Two-level Lindblad master equation with coupling element omega (half the
/// standard Rabi frequency), detuning delta and decay gamma, integrated by
/// classical RK4 from the ground state until it stops changing.
TwoLevelSteadyState two_level_bloch_steady_state(double omega, double delta, double gamma);

/// alpha L for a weak probe on a bare two-level |0>-|3> transition.
cplx two_level_alpha_l(double opd, double dw_i, double gamma03 = 1.0);

/// Best objective on an n^5 grid spanning the bounds.
struct GridSearchResult {
  double eta = 0.0;
  optimizer::Params params{};
};
GridSearchResult grid_search(const optimizer::Bounds& b, std::size_t per_axis,
                             const model::EnsembleConfig& ens, const model::DecayRates& rates);

/// E_s(L) / E_i(0) and E_i(L) / E_i(0) written literally from the closed
/// down-conversion solution (factor 1/(w + q) kept in the idler row).
std::array<cplx, 2> literal_down_conversion(const model::CouplingCoefficients& c);

}  // namespace fconv::oracle
