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

#ifndef MEMQ_DYNAMICS_HPP_
#define MEMQ_DYNAMICS_HPP_

#include <optional>
#include <vector>

#include "memq/kernel.hpp"

namespace memq {

enum class DynamicsMode { kMemory, kMarkovian };

// Sweep parameters. alpha and g are taken at the reference scale x = gamma0,
// i.e. alpha = A / gamma0 and g = gamma / gamma0; gamma0 is set to 1 so
// every time is the dimensionless gamma0 t.
struct SweepConfig {
  double alpha = 0.1;
  double g = 0.5;
  double t_max = 10.0;
  int n_points = 400;
  DynamicsMode mode = DynamicsMode::kMemory;

  void validate() const;
  MemoryKernel<double> kernel() const;
  std::vector<double> grid() const;
};

// N_SE and N_AE are NaN where the map is not completely positive (no Kraus
// form exists there); N_SA is still evaluated from the S-A state.
struct TrajectoryPoint {
  double gamma0_t;
  double D;
  double N_SA;
  double N_SE;
  double N_AE;
  bool cp;
};

XiPair<double> propagators(const SweepConfig& config, double gamma0_t);

TrajectoryPoint trajectory_point(const SweepConfig& config, double gamma0_t);

std::vector<TrajectoryPoint> trajectory(const SweepConfig& config);

// Negativity between system and ancilla for the Bell input.
double entanglement_sa(const SweepConfig& config, double gamma0_t);

inline constexpr double kDecoherenceTimeTolerance = 1e-8;

// First gamma0 t at which N_SA falls to 1/e. The grid of `config` brackets
// the crossing, bisection refines it. Empty when no crossing occurs within
// t_max.
std::optional<double> decoherence_time(const SweepConfig& config);

}  // namespace memq

#endif  // MEMQ_DYNAMICS_HPP_
