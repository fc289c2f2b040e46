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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fconv::oracle {

namespace {

using Vec2 = std::array<cplx, 2>;

Vec2 rhs(const model::CouplingCoefficients& c, const Vec2& y) {
  return {c.beta_sL * y[0] + c.kappa_sL * y[1], c.kappa_iL * y[0] + c.alpha_iL * y[1]};
}

Vec2 axpy(const Vec2& y, double h, std::initializer_list<std::pair<double, const Vec2*>> terms) {
  Vec2 out = y;
  for (const auto& [a, k] : terms) {
    out[0] += h * a * (*k)[0];
    out[1] += h * a * (*k)[1];
  }
  return out;
}

Vec2 dopri(const model::CouplingCoefficients& c, Vec2 y, double rtol, double atol) {
  double x = 0.0;
  double h = 1e-3;
  std::size_t steps = 0;
  while (x < 1.0) {
    if (++steps > 10'000'000) throw std::runtime_error("dopri: step limit");
    h = std::min(h, 1.0 - x);
    const Vec2 k1 = rhs(c, y);
    const Vec2 k2 = rhs(c, axpy(y, h, {{1.0 / 5, &k1}}));
    const Vec2 k3 = rhs(c, axpy(y, h, {{3.0 / 40, &k1}, {9.0 / 40, &k2}}));
    const Vec2 k4 = rhs(c, axpy(y, h, {{44.0 / 45, &k1}, {-56.0 / 15, &k2}, {32.0 / 9, &k3}}));
    const Vec2 k5 = rhs(c, axpy(y, h, {{19372.0 / 6561, &k1}, {-25360.0 / 2187, &k2},
                                       {64448.0 / 6561, &k3}, {-212.0 / 729, &k4}}));
    const Vec2 k6 = rhs(c, axpy(y, h, {{9017.0 / 3168, &k1}, {-355.0 / 33, &k2},
                                       {46732.0 / 5247, &k3}, {49.0 / 176, &k4},
                                       {-5103.0 / 18656, &k5}}));
    const Vec2 y5 = axpy(y, h, {{35.0 / 384, &k1}, {500.0 / 1113, &k3}, {125.0 / 192, &k4},
                                {-2187.0 / 6784, &k5}, {11.0 / 84, &k6}});
    const Vec2 k7 = rhs(c, y5);
    const Vec2 y4 = axpy(y, h, {{5179.0 / 57600, &k1}, {7571.0 / 16695, &k3},
                                {393.0 / 640, &k4}, {-92097.0 / 339200, &k5},
                                {187.0 / 2100, &k6}, {1.0 / 40, &k7}});
    double err = 0.0;
    for (std::size_t i = 0; i < 2; ++i) {
      const double scale = atol + rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
      err = std::max(err, std::abs(y5[i] - y4[i]) / scale);
    }
    if (err <= 1.0) {
      x += h;
      y = y5;
    }
    const double factor = err == 0.0 ? 5.0 : 0.9 * std::pow(err, -0.2);
    h *= std::clamp(factor, 0.2, 5.0);
  }
  return y;
}

}  // namespace

Map2 integrate_linear_system(const model::CouplingCoefficients& c, double rtol, double atol) {
  const Vec2 col_s = dopri(c, {cplx{1.0}, cplx{}}, rtol, atol);
  const Vec2 col_i = dopri(c, {cplx{}, cplx{1.0}}, rtol, atol);
  Map2 m;
  m[0] = {col_s[0], col_i[0]};
  m[1] = {col_s[1], col_i[1]};
  return m;
}

TwoLevelSteadyState two_level_bloch_steady_state(double omega, double delta, double gamma) {
  using Mat = std::array<std::array<cplx, 2>, 2>;
  const cplx i{0.0, 1.0};
  // Basis (|0>, |1>), rotating frame, coupling element omega.
  const Mat h{{{0.0, omega}, {omega, -delta}}};
  auto deriv = [&](const Mat& r) {
    Mat d{};
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        cplx comm = 0.0;
        for (int k = 0; k < 2; ++k) comm += h[a][k] * r[k][b] - r[a][k] * h[k][b];
        d[a][b] = -i * comm;
      }
    }
    // L = sqrt(gamma) |0><1|
    d[0][0] += gamma * r[1][1];
    d[1][1] -= gamma * r[1][1];
    d[0][1] -= 0.5 * gamma * r[0][1];
    d[1][0] -= 0.5 * gamma * r[1][0];
    return d;
  };
  auto add = [](const Mat& a, const Mat& b, double s) {
    Mat o;
    for (int x = 0; x < 2; ++x) {
      for (int y = 0; y < 2; ++y) o[x][y] = a[x][y] + s * b[x][y];
    }
    return o;
  };

  Mat rho{{{1.0, 0.0}, {0.0, 0.0}}};
  const double rate = std::max({std::abs(omega), std::abs(delta), gamma, 1e-3});
  const double dt = 0.01 / rate;
  const double t_end = 80.0 / gamma;
  for (double t = 0.0; t < t_end; t += dt) {
    const Mat k1 = deriv(rho);
    const Mat k2 = deriv(add(rho, k1, dt / 2));
    const Mat k3 = deriv(add(rho, k2, dt / 2));
    const Mat k4 = deriv(add(rho, k3, dt));
    for (int x = 0; x < 2; ++x) {
      for (int y = 0; y < 2; ++y) {
        rho[x][y] += dt / 6.0 * (k1[x][y] + 2.0 * k2[x][y] + 2.0 * k3[x][y] + k4[x][y]);
      }
    }
  }
  return {rho[1][1].real(), std::abs(rho[0][1])};
}

cplx two_level_alpha_l(double opd, double dw_i, double gamma03) {
  // Weak probe: sigma_03 = i g E / (gamma/2 - i dw), dE/dz = i (N g^2 / c) sigma_03.
  return -opd * (gamma03 / 2.0) / cplx{gamma03 / 2.0, -dw_i};
}

GridSearchResult grid_search(const optimizer::Bounds& b, std::size_t per_axis,
                             const model::EnsembleConfig& ens, const model::DecayRates& rates) {
  const auto lo = b.lower();
  const auto hi = b.upper();
  GridSearchResult best;
  std::array<std::size_t, 5> idx{};
  const double denom = static_cast<double>(per_axis - 1);
  while (true) {
    optimizer::Params p;
    for (std::size_t k = 0; k < 5; ++k) {
      p[k] = lo[k] + (hi[k] - lo[k]) * static_cast<double>(idx[k]) / denom;
    }
    const double v = optimizer::objective(p, ens, rates);
    if (v > best.eta) best = {v, p};
    std::size_t k = 0;
    while (k < 5 && ++idx[k] == per_axis) idx[k++] = 0;
    if (k == 5) break;
  }
  return best;
}

std::array<cplx, 2> literal_down_conversion(const model::CouplingCoefficients& c) {
  const cplx q = (-c.alpha_iL + c.beta_sL) / 2.0;
  const cplx w = std::sqrt(q * q + c.kappa_sL * c.kappa_iL);
  const cplx pre = std::exp((c.alpha_iL + c.beta_sL) / 2.0) / (2.0 * w);
  const cplx es = pre * c.kappa_sL * (std::exp(w) - std::exp(-w));
  const cplx ei =
      pre / (w + q) * (c.kappa_sL * c.kappa_iL * std::exp(w) + (q + w) * (q + w) * std::exp(-w));
  return {es, ei};
}

}  // namespace fconv::oracle
