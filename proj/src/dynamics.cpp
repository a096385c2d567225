// Copyright 2026 The memq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "memq/dynamics.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "memq/channel.hpp"
#include "memq/errors.hpp"
#include "memq/states.hpp"

namespace memq {

void SweepConfig::validate() const {
  if (!(alpha >= 0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::kInvalidConfig, "alpha must be finite and >= 0");
  }
  if (!(g > 0) || !std::isfinite(g)) {
    throw Error(ErrorCode::kInvalidConfig, "g must be finite and > 0");
  }
  if (!(t_max > 0) || !std::isfinite(t_max)) {
    throw Error(ErrorCode::kInvalidConfig, "t_max must be finite and > 0");
  }
  if (n_points < 2) throw Error(ErrorCode::kInvalidConfig, "need at least 2 time points");
}

MemoryKernel<double> SweepConfig::kernel() const {
  return MemoryKernel<double>::from_ratios(alpha, g, 1.0);
}

std::vector<double> SweepConfig::grid() const {
  std::vector<double> ts(static_cast<std::size_t>(n_points));
  const double last = static_cast<double>(n_points - 1);
  for (int i = 0; i < n_points; ++i) ts[static_cast<std::size_t>(i)] = t_max * i / last;
  ts.back() = t_max;
  return ts;
}

XiPair<double> propagators(const SweepConfig& config, double gamma0_t) {
  if (config.mode == DynamicsMode::kMarkovian) return markovian_xi_pair(1.0, gamma0_t);
  return xi_pair(config.kernel(), gamma0_t);
}

TrajectoryPoint trajectory_point(const SweepConfig& config, double gamma0_t) {
  const auto p = propagators(config, gamma0_t);
  const auto sample = cp_sample(p, gamma0_t);
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  TrajectoryPoint pt{gamma0_t, sample.D, nan, nan, nan, sample.completely_positive};

  if (!pt.cp) {
    pt.N_SA = negativity(rho_sa_closed(p), "A").value;
    return pt;
  }
  const auto kraus = config.mode == DynamicsMode::kMarkovian
                         ? kraus_markovian(1.0, gamma0_t)
                         : kraus_closed_form(p, gamma0_t);
  const auto full = dilated_bell_state(kraus);
  pt.N_SA = negativity(partial_trace(full, "E"), "A").value;
  pt.N_SE = negativity(partial_trace(full, "A"), "E").value;
  pt.N_AE = negativity(partial_trace(full, "S"), "E").value;
  return pt;
}

std::vector<TrajectoryPoint> trajectory(const SweepConfig& config) {
  config.validate();
  std::vector<TrajectoryPoint> out;
  out.reserve(static_cast<std::size_t>(config.n_points));
  for (double t : config.grid()) out.push_back(trajectory_point(config, t));
  return out;
}

double entanglement_sa(const SweepConfig& config, double gamma0_t) {
  return negativity(rho_sa_closed(propagators(config, gamma0_t)), "A").value;
}

std::optional<double> decoherence_time(const SweepConfig& config) {
  config.validate();
  const double target = 1.0 / std::numbers::e;
  auto excess = [&](double t) { return entanglement_sa(config, t) - target; };

  const auto ts = config.grid();
  double prev_t = ts.front();
  if (excess(prev_t) <= 0) return prev_t;
  for (std::size_t i = 1; i < ts.size(); ++i) {
    const double t = ts[i];
    const double e = excess(t);
    if (e == 0) return t;
    if (e < 0) {
      double lo = prev_t;
      double hi = t;
      while (hi - lo > kDecoherenceTimeTolerance) {
        const double mid = (lo + hi) / 2;
        (excess(mid) > 0 ? lo : hi) = mid;
      }
      return (lo + hi) / 2;
    }
    prev_t = t;
  }
  return std::nullopt;
}

}  // namespace memq
