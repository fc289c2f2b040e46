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

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace fconv::optimizer {

struct NelderMeadOptions {
  std::size_t max_evals = 5000;
  double initial_step = 0.1;  ///< edge length of the start simplex, fraction of box width
  double xtol = 1e-6;         ///< simplex diameter in box-normalized coordinates
  double ftol = 1e-9;         ///< spread of objective values over the simplex
};

struct NelderMeadResult {
  std::vector<double> x;
  double f = 0.0;
  std::size_t evals = 0;
  bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

/// Minimizes `f` inside the box [lower, upper]. Trial points are clamped to
/// the box, so every evaluation is feasible.
[[nodiscard]] NelderMeadResult nelder_mead_bounded(const Objective& f, std::span<const double> x0,
                                                   std::span<const double> lower,
                                                   std::span<const double> upper,
                                                   const NelderMeadOptions& opts);

}  // namespace fconv::optimizer
