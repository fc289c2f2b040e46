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

#include "fconv/app/config.hpp"

#include <yaml-cpp/yaml.h>
#include <fmt/format.h>

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace fconv::app {

namespace {

// Where a value came from, for error messages.
struct Origin {
  const std::set<std::string>* overridden = nullptr;

  [[nodiscard]] std::string where(const std::string& key, const YAML::Node& node) const {
    if (overridden != nullptr && overridden->contains(key)) return fmt::format("--set {}", key);
    const YAML::Mark m = node.Mark();
    if (m.is_null()) return fmt::format("key '{}'", key);
    return fmt::format("line {}: key '{}'", m.line + 1, key);
  }
};

[[noreturn]] void fail(const Origin& o, const std::string& key, const YAML::Node& node,
                       const std::string& what) {
  throw ConfigError(fmt::format("{}: {}", o.where(key, node), what));
}

double as_double(const Origin& o, const std::string& key, const YAML::Node& node) {
  if (!node.IsScalar()) fail(o, key, node, "expected a number");
  double v = 0.0;
  if (!YAML::convert<double>::decode(node, v) || !std::isfinite(v)) {
    fail(o, key, node, fmt::format("'{}' is not a finite number", node.Scalar()));
  }
  return v;
}

std::uint64_t as_count(const Origin& o, const std::string& key, const YAML::Node& node) {
  if (!node.IsScalar()) fail(o, key, node, "expected a nonnegative integer");
  const std::string& s = node.Scalar();
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    fail(o, key, node, fmt::format("'{}' is not a nonnegative integer", s));
  }
  std::uint64_t v = 0;
  if (!YAML::convert<std::uint64_t>::decode(node, v)) fail(o, key, node, "integer out of range");
  return v;
}

double at_least(const Origin& o, const std::string& key, const YAML::Node& node, double lo) {
  const double v = as_double(o, key, node);
  if (!(v >= lo)) fail(o, key, node, fmt::format("must be >= {}, got {}", lo, v));
  return v;
}

double positive(const Origin& o, const std::string& key, const YAML::Node& node) {
  const double v = as_double(o, key, node);
  if (!(v > 0.0)) fail(o, key, node, fmt::format("must be > 0, got {}", v));
  return v;
}

optimizer::Interval as_interval(const Origin& o, const std::string& key, const YAML::Node& node) {
  if (!node.IsSequence() || node.size() != 2) fail(o, key, node, "expected [lo, hi]");
  const optimizer::Interval iv{as_double(o, key, node[0]), as_double(o, key, node[1])};
  if (!(iv.lo < iv.hi)) fail(o, key, node, "needs lo < hi");
  return iv;
}

ShapeConfig as_shape(const Origin& o, const std::string& key, const YAML::Node& node,
                     ShapeConfig shape, bool is_pump) {
  if (!node.IsMap()) fail(o, key, node, "expected a map of pulse-shape keys");
  for (const auto& kv : node) {
    const std::string sub = kv.first.as<std::string>();
    const std::string full = key + "." + sub;
    const YAML::Node& v = kv.second;
    if (sub == "kind") {
      const std::string k = v.IsScalar() ? v.Scalar() : "";
      if (k == "cw") {
        shape.kind = mb::PulseKind::kCw;
      } else if (k == "ramped") {
        shape.kind = mb::PulseKind::kRampedSquare;
      } else {
        fail(o, full, v, "kind must be 'cw' or 'ramped'");
      }
    } else if (sub == "amplitude" && !is_pump) {
      shape.amplitude = at_least(o, full, v, 0.0);
    } else if (sub == "t_r") {
      shape.t_r = as_double(o, full, v);
    } else if (sub == "t_s") {
      shape.t_s = positive(o, full, v);
    } else if (sub == "duration") {
      if (is_pump && v.IsScalar() && v.Scalar() == "auto") {
        shape.duration.reset();
      } else {
        shape.duration = positive(o, full, v);
      }
    } else {
      fail(o, full, kv.first,
           is_pump && sub == "amplitude" ? "pump amplitudes are set by omega_a / omega_b"
                                         : "unknown key");
    }
  }
  if (shape.kind == mb::PulseKind::kRampedSquare) {
    if (!shape.duration && !is_pump) fail(o, key, node, "a ramped probe pulse needs a duration");
    if (shape.duration && *shape.duration < shape.t_s) {
      fail(o, key, node, "duration must be >= t_s");
    }
  }
  return shape;
}

using Setter = std::function<void(RunConfig&, const Origin&, const std::string&, const YAML::Node&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    auto real = [&t](const std::string& k, double RunConfig::*field) {
      t[k] = [field](RunConfig& c, const Origin& o, const std::string& key, const YAML::Node& n) {
        c.*field = as_double(o, key, n);
      };
    };
    auto pos = [&t](const std::string& k, auto get) {
      t[k] = [get](RunConfig& c, const Origin& o, const std::string& key, const YAML::Node& n) {
        get(c) = positive(o, key, n);
      };
    };
    auto interval = [&t](const std::string& k, optimizer::Interval optimizer::Bounds::*field,
                         bool nonnegative) {
      t[k] = [field, nonnegative](RunConfig& c, const Origin& o, const std::string& key,
                                  const YAML::Node& n) {
        const optimizer::Interval iv = as_interval(o, key, n);
        if (nonnegative && iv.lo < 0.0) fail(o, key, n, "Rabi-frequency bounds must be >= 0");
        c.bounds.*field = iv;
      };
    };

    t["scenario"] = [](RunConfig& c, const Origin& o, const std::string& key, const YAML::Node& n) {
      if (!n.IsScalar()) fail(o, key, n, "expected a scenario name");
      try {
        c.scenario = scenario_from_string(n.Scalar());
      } catch (const ConfigError& e) {
        fail(o, key, n, e.what());
      }
    };
    t["omega_a"] = [](RunConfig& c, const Origin& o, const std::string& key, const YAML::Node& n) {
      c.omega_a = at_least(o, key, n, 0.0);
    };
    t["omega_b"] = [](RunConfig& c, const Origin& o, const std::string& key, const YAML::Node& n) {
      c.omega_b = at_least(o, key, n, 0.0);
    };
    real("delta_1", &RunConfig::delta_1);
    real("delta_b", &RunConfig::delta_b);
    real("dw_i", &RunConfig::dw_i);
    real("dw_min", &RunConfig::dw_min);
    real("dw_max", &RunConfig::dw_max);
    pos("opd", [](RunConfig& c) -> double& { return c.opd; });
    pos("length", [](RunConfig& c) -> double& { return c.length; });
    pos("coupling_ratio", [](RunConfig& c) -> double& { return c.coupling_ratio; });
    pos("gamma_03", [](RunConfig& c) -> double& { return c.rates.gamma_03; });
    pos("gamma_01", [](RunConfig& c) -> double& { return c.rates.gamma_01; });
    pos("gamma_12", [](RunConfig& c) -> double& { return c.rates.gamma_12; });
    pos("gamma_32", [](RunConfig& c) -> double& { return c.rates.gamma_32; });
    pos("gamma03_lifetime_ns", [](RunConfig& c) -> double& { return c.gamma03_lifetime_ns; });
    pos("dt", [](RunConfig& c) -> double& { return c.grid.dt; });
    pos("dz", [](RunConfig& c) -> double& { return c.grid.dz; });
    t["t_span"] = [](RunConfig& c, const Origin& o, const std::string& key, const YAML::Node& n) {
      c.grid.t_span = at_least(o, key, n, 0.0);
    };
    t["points"] = [](RunConfig& c, const Origin& o, const std::string& key, const YAML::Node& n) {
      const auto v = as_count(o, key, n);
      if (v < 2) fail(o, key, n, "must be >= 2");
      c.points = v;
    };
    t["budget"] = [](RunConfig& c, const Origin& o, const std::string& key, const YAML::Node& n) {
      const auto v = as_count(o, key, n);
      if (v < 1000) fail(o, key, n, "must be >= 1000");
      c.budget = v;
    };
    t["n_starts"] = [](RunConfig& c, const Origin& o, const std::string& key, const YAML::Node& n) {
      const auto v = as_count(o, key, n);
      if (v < 1) fail(o, key, n, "must be >= 1");
      c.n_starts = v;
    };
    t["seed"] = [](RunConfig& c, const Origin& o, const std::string& key, const YAML::Node& n) {
      c.seed = as_count(o, key, n);
    };
    t["jobs"] = [](RunConfig& c, const Origin& o, const std::string& key, const YAML::Node& n) {
      const auto v = as_count(o, key, n);
      if (v < 1 || v > 1024) fail(o, key, n, "must be in [1, 1024]");
      c.jobs = static_cast<unsigned>(v);
    };
    t["corrector_iters"] = [](RunConfig& c, const Origin& o, const std::string& key,
                              const YAML::Node& n) {
      const auto v = as_count(o, key, n);
      if (v > 100) fail(o, key, n, "must be <= 100");
      c.grid.corrector_iters = static_cast<int>(v);
    };
    t["snapshot_stride"] = [](RunConfig& c, const Origin& o, const std::string& key,
                              const YAML::Node& n) {
      const auto v = as_count(o, key, n);
      if (v < 1) fail(o, key, n, "must be >= 1");
      c.grid.snapshot_stride = v;
    };
    t["opd_list"] = [](RunConfig& c, const Origin& o, const std::string& key, const YAML::Node& n) {
      if (!n.IsSequence() || n.size() == 0) fail(o, key, n, "expected a nonempty list");
      std::vector<double> list;
      for (const auto& item : n) {
        const double v = positive(o, key, item);
        if (!list.empty() && !(v > list.back())) fail(o, key, item, "must be strictly increasing");
        list.push_back(v);
      }
      c.opd_list = std::move(list);
    };
    interval("bound_omega_a", &optimizer::Bounds::omega_a, true);
    interval("bound_omega_b", &optimizer::Bounds::omega_b, true);
    interval("bound_delta_1", &optimizer::Bounds::delta_1, false);
    interval("bound_delta_b", &optimizer::Bounds::delta_b, false);
    interval("bound_dw_i", &optimizer::Bounds::dw_i, false);
    auto shape = [&t](const std::string& k, ShapeConfig RunConfig::*field, bool is_pump) {
      t[k] = [field, is_pump](RunConfig& c, const Origin& o, const std::string& key,
                              const YAML::Node& n) {
        c.*field = as_shape(o, key, n, c.*field, is_pump);
      };
    };
    shape("pump_a", &RunConfig::pump_a, true);
    shape("pump_b", &RunConfig::pump_b, true);
    shape("idler", &RunConfig::idler, false);
    shape("signal", &RunConfig::signal, false);
    return t;
  }();
  return table;
}

void apply_override(YAML::Node& root, const Override& ov) {
  const auto& [key, text] = ov;
  if (key.empty()) throw ConfigError("--set needs key=value");
  YAML::Node value;
  try {
    value = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(fmt::format("--set {}: {}", key, e.msg));
  }
  const auto dot = key.find('.');
  if (dot == std::string::npos) {
    root[key] = value;
    return;
  }
  const std::string outer = key.substr(0, dot);
  const std::string inner = key.substr(dot + 1);
  if (inner.empty() || inner.find('.') != std::string::npos) {
    throw ConfigError(fmt::format("--set {}: keys nest at most one level", key));
  }
  YAML::Node sub = root[outer];
  if (sub && !sub.IsMap()) throw ConfigError(fmt::format("--set {}: '{}' is not a map", key, outer));
  root[outer][inner] = value;
}

std::string num(double v) { return fmt::format("{:.17g}", v); }

void write_shape(std::ostringstream& os, const char* name, const ShapeConfig& s, bool is_pump) {
  os << name << ":\n";
  os << "  kind: " << (s.kind == mb::PulseKind::kCw ? "cw" : "ramped") << "\n";
  if (!is_pump) os << "  amplitude: " << num(s.amplitude) << "\n";
  os << "  t_r: " << num(s.t_r) << "\n";
  os << "  t_s: " << num(s.t_s) << "\n";
  if (s.duration) {
    os << "  duration: " << num(*s.duration) << "\n";
  } else if (is_pump) {
    os << "  duration: auto\n";
  }
}

mb::PulseShape resolve(const ShapeConfig& s, double amplitude) {
  if (s.kind == mb::PulseKind::kCw) return mb::PulseShape::cw(amplitude);
  return mb::PulseShape::ramped(amplitude, s.t_r, s.t_s, *s.duration);
}

mb::PulseShape resolve_pump(const ShapeConfig& s, double amplitude, const mb::PulseShape& idler) {
  if (s.kind == mb::PulseKind::kRampedSquare && !s.duration) {
    return mb::enclosing_pump(amplitude, s.t_r, s.t_s, idler);
  }
  return resolve(s, amplitude);
}

constexpr std::pair<Scenario, const char*> kScenarioNames[] = {
    {Scenario::kCoeffs, "coeffs"},     {Scenario::kSpectrum, "spectrum"},
    {Scenario::kDressed, "dressed"},   {Scenario::kOptimize, "optimize"},
    {Scenario::kOpdCurve, "opd-curve"}, {Scenario::kPulse, "pulse"},
    {Scenario::kConvergence, "convergence"},
};

}  // namespace

std::string to_string(Scenario s) {
  for (const auto& [value, name] : kScenarioNames) {
    if (value == s) return name;
  }
  return "unknown";
}

Scenario scenario_from_string(const std::string& name) {
  for (const auto& [value, n] : kScenarioNames) {
    if (name == n) return value;
  }
  throw ConfigError(fmt::format(
      "unknown scenario '{}' (coeffs, spectrum, dressed, optimize, opd-curve, pulse, convergence)",
      name));
}

model::PumpConfig RunConfig::pump() const noexcept { return {omega_a, omega_b, delta_1, delta_b}; }

model::EnsembleConfig RunConfig::ensemble() const noexcept {
  model::EnsembleConfig e;
  e.opd = opd;
  e.length = length;
  e.coupling_ratio = coupling_ratio;
  return e;
}

optimizer::SearchSettings RunConfig::search() const noexcept {
  return {budget, n_starts, seed, jobs};
}

mb::Scenario RunConfig::mb_scenario() const {
  mb::Scenario s;
  s.idler_in = resolve(idler, idler.amplitude);
  s.signal_in = resolve(signal, signal.amplitude);
  s.pump_a = resolve_pump(pump_a, omega_a, s.idler_in);
  s.pump_b = resolve_pump(pump_b, omega_b, s.idler_in);
  s.pump = pump();
  s.dw_i = dw_i;
  s.ens = ensemble();
  s.rates = rates;
  s.gamma03_lifetime_ns = gamma03_lifetime_ns;
  return s;
}

RunConfig parse_config(const std::string& text, const std::vector<Override>& overrides) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(fmt::format("line {}: {}", e.mark.line + 1, e.msg));
  }
  if (root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
  if (!root.IsMap()) throw ConfigError("config must be a key-value map");

  std::set<std::string> overridden;
  for (const Override& ov : overrides) {
    apply_override(root, ov);
    overridden.insert(ov.first);
    overridden.insert(ov.first.substr(0, ov.first.find('.')));
  }

  const Origin origin{&overridden};
  RunConfig c;
  const auto& table = setters();
  for (const auto& kv : root) {
    const std::string key = kv.first.as<std::string>();
    const auto it = table.find(key);
    if (it == table.end()) fail(origin, key, kv.first, "unknown key");
    it->second(c, origin, key, kv.second);
  }

  if (!(c.dw_min < c.dw_max)) {
    throw ConfigError(fmt::format("dw_min ({}) must be below dw_max ({})", c.dw_min, c.dw_max));
  }
  return c;
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream os;
  auto line = [&os](const char* key, const std::string& v) { os << key << ": " << v << "\n"; };
  auto interval = [&](const char* key, const optimizer::Interval& iv) {
    line(key, fmt::format("[{}, {}]", num(iv.lo), num(iv.hi)));
  };
  line("scenario", to_string(c.scenario));
  line("omega_a", num(c.omega_a));
  line("omega_b", num(c.omega_b));
  line("delta_1", num(c.delta_1));
  line("delta_b", num(c.delta_b));
  line("dw_i", num(c.dw_i));
  line("opd", num(c.opd));
  line("length", num(c.length));
  line("coupling_ratio", num(c.coupling_ratio));
  line("gamma_03", num(c.rates.gamma_03));
  line("gamma_01", num(c.rates.gamma_01));
  line("gamma_12", num(c.rates.gamma_12));
  line("gamma_32", num(c.rates.gamma_32));
  line("gamma03_lifetime_ns", num(c.gamma03_lifetime_ns));
  line("dw_min", num(c.dw_min));
  line("dw_max", num(c.dw_max));
  line("points", std::to_string(c.points));
  interval("bound_omega_a", c.bounds.omega_a);
  interval("bound_omega_b", c.bounds.omega_b);
  interval("bound_delta_1", c.bounds.delta_1);
  interval("bound_delta_b", c.bounds.delta_b);
  interval("bound_dw_i", c.bounds.dw_i);
  line("budget", std::to_string(c.budget));
  line("n_starts", std::to_string(c.n_starts));
  line("seed", std::to_string(c.seed));
  std::string opds;
  for (std::size_t k = 0; k < c.opd_list.size(); ++k) opds += (k ? ", " : "") + num(c.opd_list[k]);
  line("opd_list", "[" + opds + "]");
  write_shape(os, "pump_a", c.pump_a, true);
  write_shape(os, "pump_b", c.pump_b, true);
  write_shape(os, "idler", c.idler, false);
  write_shape(os, "signal", c.signal, false);
  line("dt", num(c.grid.dt));
  line("dz", num(c.grid.dz));
  line("t_span", num(c.grid.t_span));
  line("corrector_iters", std::to_string(c.grid.corrector_iters));
  line("snapshot_stride", std::to_string(c.grid.snapshot_stride));
  return os.str();
}

}  // namespace fconv::app
