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

#include "fconv/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fconv/errors.hpp"

namespace fconv::optimizer {

namespace {

struct Vertex {
  std::vector<double> u;  // box-normalized coordinates in [0, 1]
  double f = 0.0;
};

}  // namespace

NelderMeadResult nelder_mead_bounded(const Objective& f, std::span<const double> x0,
                                     std::span<const double> lower,
                                     std::span<const double> upper,
                                     const NelderMeadOptions& opts) {
  const std::size_t n = x0.size();
  if (n == 0 || lower.size() != n || upper.size() != n) {
    throw InvalidArgument("nelder_mead_bounded: dimension mismatch");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(upper[i] > lower[i])) throw InvalidArgument("nelder_mead_bounded: empty box");
  }

  auto to_box = [&](const std::vector<double>& u, std::size_t i) {
    return std::clamp(lower[i] + u[i] * (upper[i] - lower[i]), lower[i], upper[i]);
  };
  std::vector<double> x(n);
  std::size_t evals = 0;
  auto evaluate = [&](const std::vector<double>& u) {
    if (evals >= opts.max_evals) return std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) x[i] = to_box(u, i);
    ++evals;
    const double v = f(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };
  auto clamp01 = [](std::vector<double>& u) {
    for (double& c : u) c = std::clamp(c, 0.0, 1.0);
  };

  std::vector<Vertex> simplex(n + 1);
  simplex[0].u.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    simplex[0].u[i] = std::clamp((x0[i] - lower[i]) / (upper[i] - lower[i]), 0.0, 1.0);
  }
  simplex[0].f = evaluate(simplex[0].u);
  for (std::size_t i = 0; i < n; ++i) {
    Vertex& v = simplex[i + 1];
    v.u = simplex[0].u;
    v.u[i] += (v.u[i] + opts.initial_step <= 1.0) ? opts.initial_step : -opts.initial_step;
    clamp01(v.u);
    v.f = evaluate(v.u);
  }

  auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };
  bool converged = false;
  std::vector<double> centroid(n), trial(n);

  auto point_along = [&](double t) {
    // centroid + t * (centroid - worst)
    const Vertex& worst = simplex.back();
    for (std::size_t i = 0; i < n; ++i) trial[i] = centroid[i] + t * (centroid[i] - worst.u[i]);
    clamp01(trial);
    return evaluate(trial);
  };

  while (evals < opts.max_evals) {
    std::stable_sort(simplex.begin(), simplex.end(), by_value);

    double diameter = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        diameter = std::max(diameter, std::abs(simplex[k].u[i] - simplex[0].u[i]));
      }
    }
    const double spread = simplex.back().f - simplex.front().f;
    if (diameter < opts.xtol || (std::isfinite(spread) && spread < opts.ftol)) {
      converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[k].u[i];
    }
    for (double& c : centroid) c /= static_cast<double>(n);

    Vertex& worst = simplex.back();
    const double f_best = simplex.front().f;
    const double f_second = simplex[n - 1].f;

    const double f_r = point_along(1.0);
    if (f_r < f_best) {
      std::vector<double> reflected = trial;
      const double f_e = point_along(2.0);
      if (f_e < f_r) {
        worst.u = trial;
        worst.f = f_e;
      } else {
        worst.u = std::move(reflected);
        worst.f = f_r;
      }
      continue;
    }
    if (f_r < f_second) {
      worst.u = trial;
      worst.f = f_r;
      continue;
    }

    // Contraction: outside if the reflection beat the worst vertex, else inside.
    const bool outside = f_r < worst.f;
    const double f_c = point_along(outside ? 0.5 : -0.5);
    if (f_c < (outside ? f_r : worst.f)) {
      worst.u = trial;
      worst.f = f_c;
      continue;
    }

    // Shrink toward the best vertex.
    for (std::size_t k = 1; k <= n && evals < opts.max_evals; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        simplex[k].u[i] = simplex[0].u[i] + 0.5 * (simplex[k].u[i] - simplex[0].u[i]);
      }
      simplex[k].f = evaluate(simplex[k].u);
    }
  }

  const auto best = std::min_element(simplex.begin(), simplex.end(), by_value);
  NelderMeadResult result;
  result.x.resize(n);
  for (std::size_t i = 0; i < n; ++i) result.x[i] = to_box(best->u, i);
  result.f = best->f;
  result.evals = evals;
  result.converged = converged;
  return result;
}

}  // namespace fconv::optimizer
