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

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <numeric>
#include <vector>

#include "fconv/errors.hpp"
#include "fconv/mbsolver.hpp"

namespace fconv::mb {

namespace {

constexpr std::size_t kPadding = 16;
constexpr double kFloorRatio = 10.0;
constexpr double kMinDepth = 1e-9;

// Least-squares quadratic in x in [-1, 1], subtracted in place.
void remove_quadratic_trend(std::vector<double>& y) {
  const std::size_t n = y.size();
  std::array<std::array<double, 4>, 3> a{};  // normal equations, augmented
  for (std::size_t k = 0; k < n; ++k) {
    const double x = -1.0 + 2.0 * static_cast<double>(k) / static_cast<double>(n - 1);
    const std::array<double, 3> basis{1.0, x, x * x};
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) a[i][j] += basis[i] * basis[j];
      a[i][3] += basis[i] * y[k];
    }
  }
  for (std::size_t col = 0; col < 3; ++col) {
    for (std::size_t row = col + 1; row < 3; ++row) {
      const double m = a[row][col] / a[col][col];
      for (std::size_t j = col; j < 4; ++j) a[row][j] -= m * a[col][j];
    }
  }
  std::array<double, 3> c{};
  for (std::size_t i = 3; i-- > 0;) {
    double acc = a[i][3];
    for (std::size_t j = i + 1; j < 3; ++j) acc -= a[i][j] * c[j];
    c[i] = acc / a[i][i];
  }
  for (std::size_t k = 0; k < n; ++k) {
    const double x = -1.0 + 2.0 * static_cast<double>(k) / static_cast<double>(n - 1);
    y[k] -= c[0] + c[1] * x + c[2] * x * x;
  }
}

}  // namespace

Modulation modulation_frequency(std::span<const double> trace, double dt) {
  const std::size_t n = trace.size();
  if (n < 64) throw InvalidArgument("modulation trace needs at least 64 samples");
  if (!(dt > 0.0)) throw InvalidArgument("modulation sample spacing must be > 0");

  const double mean = std::accumulate(trace.begin(), trace.end(), 0.0) / static_cast<double>(n);
  std::vector<double> y(trace.begin(), trace.end());
  remove_quadratic_trend(y);

  const double pi = std::numbers::pi;
  double window_sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double w = 0.5 - 0.5 * std::cos(2.0 * pi * static_cast<double>(k) / static_cast<double>(n - 1));
    y[k] *= w;
    window_sum += w;
  }

  // Zero-padded DFT magnitudes from two cycles per record up to Nyquist.
  const std::size_t padded = kPadding * n;
  const std::size_t first_bin = 2 * kPadding;
  const std::size_t last_bin = padded / 2;
  std::vector<double> magnitude;
  magnitude.reserve(last_bin - first_bin + 1);
  for (std::size_t b = first_bin; b <= last_bin; ++b) {
    const double phase = -2.0 * pi * static_cast<double>(b) / static_cast<double>(padded);
    const std::complex<double> rot = std::polar(1.0, phase);
    std::complex<double> z{1.0, 0.0};
    std::complex<double> acc{};
    for (std::size_t k = 0; k < n; ++k) {
      acc += y[k] * z;
      z *= rot;
    }
    magnitude.push_back(std::abs(acc));
  }

  const auto peak_it = std::max_element(magnitude.begin(), magnitude.end());
  std::vector<double> sorted = magnitude;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2),
                   sorted.end());
  const double floor = sorted[sorted.size() / 2];

  Modulation m;
  const auto bin = first_bin + static_cast<std::size_t>(peak_it - magnitude.begin());
  m.frequency = 2.0 * pi * static_cast<double>(bin) / (static_cast<double>(padded) * dt);
  m.bin_width = 2.0 * pi / (static_cast<double>(n) * dt);
  const double amplitude = 2.0 * *peak_it / window_sum;
  m.depth = mean != 0.0 ? amplitude / std::abs(mean) : amplitude;
  m.peak_to_floor = floor > 0.0 ? *peak_it / floor : std::numeric_limits<double>::infinity();
  if (!(m.depth > kMinDepth)) {
    throw NoModulation("oscillation depth " + std::to_string(m.depth) + " below resolution");
  }
  if (m.peak_to_floor < kFloorRatio) {
    throw NoModulation("spectral peak is only " + std::to_string(m.peak_to_floor) +
                       "x the floor");
  }
  return m;
}

}  // namespace fconv::mb
