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

#include "fconv/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "fconv/errors.hpp"
#include "fconv/nelder_mead.hpp"
#include "fconv/parallel.hpp"
#include "fconv/parametric.hpp"

namespace fconv::optimizer {

namespace {

std::array<Interval, 5> as_array(const Bounds& b) {
  return {b.omega_a, b.omega_b, b.delta_1, b.delta_b, b.dw_i};
}

Params negate_detunings(Params p) {
  p[kDelta1] = -p[kDelta1];
  p[kDeltaB] = -p[kDeltaB];
  p[kDwI] = -p[kDwI];
  return p;
}

struct LocalResult {
  Params x{};
  double value = 0.0;
  double start_value = 0.0;
  std::size_t evals = 0;
  bool converged = false;
};

// Nelder-Mead from `start`, restarted from its own optimum with a smaller
// simplex until a restart stops improving or the allowance is spent.
LocalResult local_search(const Params& start, const Bounds& bounds, std::size_t allowance,
                         const model::EnsembleConfig& ens, const model::DecayRates& rates) {
  const Params lo = bounds.lower();
  const Params hi = bounds.upper();
  const Objective f = [&](std::span<const double> x) {
    Params p;
    std::copy(x.begin(), x.end(), p.begin());
    return -objective(p, ens, rates);
  };

  LocalResult out;
  out.x = start;
  out.start_value = objective(start, ens, rates);
  out.value = out.start_value;
  out.evals = 1;

  double step = 0.1;
  while (out.evals < allowance) {
    NelderMeadOptions opts;
    opts.max_evals = allowance - out.evals;
    opts.initial_step = step;
    const NelderMeadResult r = nelder_mead_bounded(f, out.x, lo, hi, opts);
    out.evals += r.evals;
    out.converged = r.converged;
    const double gained = -r.f - out.value;
    if (-r.f > out.value) {
      std::copy(r.x.begin(), r.x.end(), out.x.begin());
      out.value = -r.f;
    }
    if (!r.converged || gained < 1e-9) break;
    step = std::max(0.01, step * 0.5);
  }
  return out;
}

OptimumRecord search(double opd, const std::vector<Params>& starts, const Bounds& bounds,
                     const SearchSettings& settings, const model::EnsembleConfig& ens_in,
                     const model::DecayRates& rates) {
  if (!(opd > 0.0)) throw InvalidArgument("opd must be > 0");
  if (settings.budget < 1000) throw InvalidArgument("optimizer budget must be >= 1000");
  bounds.validate();
  rates.validate();

  model::EnsembleConfig ens = ens_in;
  ens.opd = opd;
  ens.validate();

  const std::size_t allowance = settings.budget / starts.size();
  std::vector<LocalResult> results(starts.size());
  parallel_for(starts.size(), settings.jobs, [&](std::size_t k) {
    results[k] = local_search(starts[k], bounds, allowance, ens, rates);
  });

  OptimumRecord rec;
  rec.opd = opd;
  rec.seed = settings.seed;
  rec.starts_used = starts.size();
  std::size_t best = 0;
  rec.best_start_value = results[0].start_value;
  for (std::size_t k = 0; k < results.size(); ++k) {
    rec.evaluations += results[k].evals;
    rec.best_start_value = std::max(rec.best_start_value, results[k].start_value);
    if (results[k].value > results[best].value) best = k;
  }
  rec.params = results[best].x;
  rec.converged = results[best].converged;

  // The detuning-sign flip is an exact degeneracy; report the Delta w_i < 0 member.
  if (rec.params[kDwI] > 0.0) {
    const Params flipped = negate_detunings(rec.params);
    if (bounds.contains(flipped) && objective(flipped, ens, rates) >= results[best].value - 1e-12) {
      rec.params = flipped;
    }
  }

  const model::PumpConfig pump = rec.pump();
  const auto c = model::coefficients(pump, model::ProbeConfig(rec.params[kDwI], pump), ens, rates);
  const auto eff = parametric::efficiencies(c);
  rec.eta_d = eff.eta_d;
  rec.eta_u = eff.eta_u;
  rec.t_d = eff.t_d;
  rec.exceeds_unity = rec.eta_d > 1.0;
  return rec;
}

}  // namespace

void Bounds::validate() const {
  for (const Interval& iv : as_array(*this)) {
    if (!(iv.lo < iv.hi) || !std::isfinite(iv.lo) || !std::isfinite(iv.hi)) {
      throw InvalidArgument("each bound interval needs finite lo < hi");
    }
  }
  if (omega_a.lo < 0.0 || omega_b.lo < 0.0) {
    throw InvalidArgument("Rabi-frequency bounds must be nonnegative");
  }
}

Params Bounds::lower() const noexcept {
  return {omega_a.lo, omega_b.lo, delta_1.lo, delta_b.lo, dw_i.lo};
}

Params Bounds::upper() const noexcept {
  return {omega_a.hi, omega_b.hi, delta_1.hi, delta_b.hi, dw_i.hi};
}

bool Bounds::contains(const Params& p) const noexcept {
  const auto iv = as_array(*this);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] >= iv[i].lo && p[i] <= iv[i].hi)) return false;
  }
  return true;
}

model::PumpConfig OptimumRecord::pump() const noexcept {
  return {params[kOmegaA], params[kOmegaB], params[kDelta1], params[kDeltaB]};
}

double objective(const Params& p, const model::EnsembleConfig& ens,
                 const model::DecayRates& rates) {
  const model::PumpConfig pump{p[kOmegaA], p[kOmegaB], p[kDelta1], p[kDeltaB]};
  try {
    const auto c = model::coefficients(pump, model::ProbeConfig(p[kDwI], pump), ens, rates);
    const double eta = parametric::down_conversion(c);
    return std::isfinite(eta) ? eta : 0.0;
  } catch (const SingularDenominator&) {
    return 0.0;
  }
}

std::vector<Params> start_points(const Bounds& bounds, std::size_t n_starts, std::uint64_t seed) {
  bounds.validate();
  std::vector<Params> starts;
  starts.reserve(n_starts);

  const double oa = std::clamp(bounds.omega_a.hi / 3.0, bounds.omega_a.lo, bounds.omega_a.hi);
  const double ob = std::clamp(bounds.omega_b.hi / 3.0, bounds.omega_b.lo, bounds.omega_b.hi);
  const double d1 = std::clamp(0.0, bounds.delta_1.lo, bounds.delta_1.hi);
  const double db = std::clamp(0.0, bounds.delta_b.lo, bounds.delta_b.hi);
  const auto dressed = parametric::dressed_spectrum({oa, ob, d1, db});
  for (std::size_t w = 0; w < 3 && starts.size() < n_starts; ++w) {
    const double dw = std::clamp(dressed.window_centers[w], bounds.dw_i.lo, bounds.dw_i.hi);
    starts.push_back({oa, ob, d1, db, dw});
  }

  std::mt19937_64 rng(seed);
  const Params lo = bounds.lower();
  const Params hi = bounds.upper();
  while (starts.size() < n_starts) {
    Params p;
    for (std::size_t i = 0; i < p.size(); ++i) {
      p[i] = std::uniform_real_distribution<double>(lo[i], hi[i])(rng);
    }
    starts.push_back(p);
  }
  return starts;
}

OptimumRecord optimize_at_opd(double opd, const Bounds& bounds, const SearchSettings& settings,
                              const model::EnsembleConfig& ens, const model::DecayRates& rates) {
  if (settings.n_starts == 0) throw InvalidArgument("n_starts must be >= 1");
  return search(opd, start_points(bounds, settings.n_starts, settings.seed), bounds, settings, ens,
                rates);
}

std::vector<OptimumRecord> efficiency_vs_opd(std::span<const double> opd_list,
                                             const Bounds& bounds,
                                             const SearchSettings& settings,
                                             const model::EnsembleConfig& ens,
                                             const model::DecayRates& rates) {
  for (std::size_t k = 0; k < opd_list.size(); ++k) {
    if (!(opd_list[k] > 0.0)) throw InvalidArgument("every opd must be > 0");
    if (k > 0 && !(opd_list[k] > opd_list[k - 1])) {
      throw InvalidArgument("opd list must be strictly increasing");
    }
  }
  if (settings.n_starts == 0) throw InvalidArgument("n_starts must be >= 1");

  const std::vector<Params> fresh = start_points(bounds, settings.n_starts, settings.seed);
  std::vector<OptimumRecord> out;
  out.reserve(opd_list.size());
  for (const double opd : opd_list) {
    std::vector<Params> starts;
    if (!out.empty()) starts.push_back(out.back().params);
    starts.insert(starts.end(), fresh.begin(), fresh.end());
    out.push_back(search(opd, starts, bounds, settings, ens, rates));
  }
  return out;
}

double detuning_symmetry_gap(const Params& p, const model::EnsembleConfig& ens,
                             const model::DecayRates& rates) {
  return std::abs(objective(p, ens, rates) - objective(negate_detunings(p), ens, rates));
}

double verify_detuning_symmetry(const OptimumRecord& record, const model::EnsembleConfig& ens,
                                const model::DecayRates& rates) {
  model::EnsembleConfig at = ens;
  at.opd = record.opd;
  return detuning_symmetry_gap(record.params, at, rates);
}

}  // namespace fconv::optimizer
