// Copyright 2026 The Authors.
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

#ifndef UAVOPT_BLLL_H_
#define UAVOPT_BLLL_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "uavopt/model.h"
#include "uavopt/objective.h"
#include "uavopt/rng.h"
#include "uavopt/trace.h"

namespace uavopt {

enum class Cooling {
  kLogarithmic,  // T(t) = t0 / log(1 + t), t >= 1
  kConstant,     // T(t) = t0
};

enum class Activation {
  kUniformSingle,  // one uniformly drawn UAV per iteration
  kCoinFlip,       // every UAV independently with probability 1/2
};

struct BlllConfig {
  // Initial temperature in bit/s. Estimated from warm-up states when unset.
  std::optional<double> t0;
  Cooling cooling = Cooling::kLogarithmic;
  std::size_t max_iters = 10000;
  Activation activation = Activation::kUniformSingle;
  // Restricts utilities to UAVs within this 3D distance when set.
  std::optional<double> neighborhood_range_m;
  std::uint64_t seed = 1;
  // Keep every n-th iteration in the trace (the last one is always kept).
  std::size_t trace_stride = 1;
  // Random distinct cells when unset.
  std::optional<Placement> initial_placement;

  // Throws InstanceError on invalid settings.
  void Validate() const;
};

// Learning state. `association` always satisfies the quota and
// single-association constraints; links under the QoS floor are kept here
// but contribute nothing and are dropped from every reported association.
struct BlllState {
  RateTable table;
  Association association;
  std::vector<int> owner;  // serving UAV per user, -1 when unassociated
  double sum_rate = 0.0;
  std::size_t iteration = 0;
  Placement best_placement;
  Association best_association;
  double best_sum_rate = 0.0;

  const Placement& placement() const { return table.placement(); }
};

// Random distinct starting cells (or the configured ones) and no users.
BlllState MakeInitialState(const Scenario& scenario, const BlllConfig& config,
                           Rng& rng);

// A trial action of one UAV: a new cell plus the users it would serve.
struct Candidate {
  std::size_t uav = 0;
  std::size_t cell = 0;
  std::vector<std::size_t> users;
  RateTable table;
};

// Draws one axis-neighbour cell (current cell when none is free) and a
// uniformly sized random subset of the unclaimed or own users that meet the
// QoS floor at that cell.
Candidate Propose(std::size_t uav, const BlllState& state, Rng& rng);

// e^(u_cand/T) / (e^(u_cur/T) + e^(u_cand/T)), overflow free.
double AcceptanceProbability(double u_current, double u_candidate,
                             double temperature);
bool Accept(double u_current, double u_candidate, double temperature,
            Rng& rng);

double Temperature(const BlllConfig& config, double t0, std::size_t t);

// Population standard deviation of a random UAV's utility over `samples`
// random feasible states; 1.0 when that is not positive.
double EstimateInitialTemperature(const Scenario& scenario, std::uint64_t seed,
                                  std::size_t samples = 100);

struct BlllResult {
  Placement final_placement;
  Association final_association;
  double final_sum_rate = 0.0;
  Placement best_placement;
  Association best_association;
  double best_sum_rate = 0.0;
  std::vector<double> final_utilities;
  std::vector<TraceRecord> trace;
  double t0 = 0.0;
  std::size_t iterations = 0;
  std::size_t accepted = 0;
};

BlllResult RunBlll(const Scenario& scenario, const BlllConfig& config);

}  // namespace uavopt

#endif  // UAVOPT_BLLL_H_
