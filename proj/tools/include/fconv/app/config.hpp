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

// Run configuration for the fconv tool: a flat YAML document with nested maps
// only for pulse shapes. All physics values are in gamma_03 units, with Rabi
// frequencies in the half-standard convention (Omega = mu E / 2 hbar).

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fconv/errors.hpp"
#include "fconv/mbsolver.hpp"
#include "fconv/model.hpp"
#include "fconv/optimizer.hpp"

namespace fconv::app {

class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class Scenario { kCoeffs, kSpectrum, kDressed, kOptimize, kOpdCurve, kPulse, kConvergence };

[[nodiscard]] std::string to_string(Scenario s);
[[nodiscard]] Scenario scenario_from_string(const std::string& name);  // throws ConfigError

/// Pulse shape as written in the config. Pump amplitudes come from
/// omega_a / omega_b; `duration` unset on pump_a means "auto" (enclose the idler).
struct ShapeConfig {
  mb::PulseKind kind = mb::PulseKind::kCw;
  double amplitude = 0.0;
  double t_r = 0.0;
  double t_s = 1.0;
  std::optional<double> duration;
};

struct RunConfig {
  Scenario scenario = Scenario::kSpectrum;

  double omega_a = 33.0;
  double omega_b = 20.0;
  double delta_1 = 0.0;
  double delta_b = 0.0;
  double dw_i = 0.0;

  double opd = 150.0;
  double length = 6e-3;
  double coupling_ratio = 1.0;
  model::DecayRates rates = model::default_rb87_rates();
  double gamma03_lifetime_ns = model::kRb87Gamma03LifetimeNs;

  double dw_min = -60.0;
  double dw_max = 60.0;
  std::size_t points = 1201;

  optimizer::Bounds bounds;
  std::size_t budget = 60000;
  std::size_t n_starts = 12;
  std::uint64_t seed = 1;
  std::vector<double> opd_list{10.0, 50.0, 150.0, 300.0};

  ShapeConfig pump_a{mb::PulseKind::kRampedSquare, 0.0, 10.0, 10.0, std::nullopt};
  ShapeConfig pump_b{mb::PulseKind::kCw, 0.0, 0.0, 1.0, std::nullopt};
  ShapeConfig idler{mb::PulseKind::kRampedSquare, 0.1, 20.0, 20.0, 100.0};
  ShapeConfig signal{mb::PulseKind::kCw, 0.0, 0.0, 1.0, std::nullopt};

  mb::GridSpec grid;
  unsigned jobs = 1;

  [[nodiscard]] model::PumpConfig pump() const noexcept;
  [[nodiscard]] model::EnsembleConfig ensemble() const noexcept;
  [[nodiscard]] optimizer::SearchSettings search() const noexcept;
  [[nodiscard]] mb::Scenario mb_scenario() const;
};

/// `key=value` override; dotted keys reach into pulse-shape maps.
using Override = std::pair<std::string, std::string>;

/// Applies defaults, then the document, then overrides. Rejects unknown keys
/// and out-of-range values with the offending key and line in the message.
[[nodiscard]] RunConfig parse_config(const std::string& text,
                                     const std::vector<Override>& overrides = {});

/// Canonical YAML for a resolved config, floats at 17 significant digits.
/// parse_config(serialize_config(c)) reproduces c exactly, except `jobs`,
/// which is left out.
[[nodiscard]] std::string serialize_config(const RunConfig& c);

}  // namespace fconv::app
