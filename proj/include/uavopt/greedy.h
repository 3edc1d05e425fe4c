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

#ifndef UAVOPT_GREEDY_H_
#define UAVOPT_GREEDY_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uavopt/model.h"
#include "uavopt/objective.h"
#include "uavopt/rng.h"
#include "uavopt/trace.h"

namespace uavopt {

enum class ConfigProvenance { kExplicit, kExhaustive, kKmeansReduced };

// Candidate fleet placements searched by the configuration greedy.
struct ConfigurationSet {
  std::vector<Placement> placements;
  ConfigProvenance provenance = ConfigProvenance::kExplicit;

  std::size_t size() const { return placements.size(); }
};

// Number of placements an exhaustive enumeration visits: L^J, or
// L!/(L-J)! when collocation is forbidden.
double ExhaustiveConfigurationCount(const Scenario& scenario);

// Every placement in odometer order (UAV 0 slowest). Throws BudgetExceeded
// when the count exceeds max_configs.
ConfigurationSet ExhaustiveConfigurations(const Scenario& scenario,
                                          std::size_t max_configs);

// Calls visit(placement) for every exhaustive placement, same order.
template <typename Visit>
void ForEachPlacement(const Scenario& scenario, Visit&& visit);

struct ConfigGreedy {
  Association association;
  double value = 0.0;          // bit/s
  std::size_t iterations = 0;  // (user, uav) pairs examined, <= I*J
};

// Repeatedly takes the highest-rate pair whose user is free, whose UAV is
// below quota and which meets the QoS floor. Interference is the one fixed
// by the configuration. Ties go to the lower user id, then UAV id.
ConfigGreedy GreedyPerConfig(const RateTable& table);
ConfigGreedy GreedyPerConfig(const Placement& placement,
                             const Scenario& scenario);

struct GreedyResult {
  std::size_t best_index = 0;
  Placement best_placement;
  Association best_association;
  double best_value = 0.0;
  std::vector<double> values;  // per configuration
  std::size_t iterations = 0;  // total selection steps
};

// Greedy association on every configuration; keeps the first maximum.
// workers <= 0 picks WorkerCount().
GreedyResult GreedyOverConfigs(const ConfigurationSet& configs,
                               const Scenario& scenario, int workers = 0);

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point2&) const = default;
};

// SINR-driven k-means: each user joins the UAV giving it the best spectral
// efficiency, each UAV moves to its cluster barycenter (kept when the
// cluster is empty). Heights stay those of `initial`. Stops early once the
// clustering is stable. Returns one grid-snapped (x, y) per UAV.
std::vector<Point2> Kmeans2d(const Scenario& scenario, std::size_t n_rounds,
                             const Placement& initial);

struct KmeansGreedyOptions {
  std::size_t kmeans_rounds = 50;
  // Also try every bijection of centers to UAVs.
  bool permute = false;
  int workers = 0;
};

// Centers x every height per UAV; collocated configurations are skipped
// unless the scenario allows them.
ConfigurationSet KmeansConfigurations(const Scenario& scenario,
                                      const std::vector<Point2>& centers,
                                      bool permute);

struct KmeansGreedyResult {
  GreedyResult greedy;
  std::vector<Point2> centers;
  Placement initial;
  std::size_t num_configs = 0;
};

// Random initial placement, k-means, then the configuration greedy.
KmeansGreedyResult CombinedKmeansGreedy(const Scenario& scenario, Rng& rng,
                                        const KmeansGreedyOptions& options = {});

struct AdaptedGreedyResult {
  Placement placement;
  Association association;     // QoS-failing links dropped
  double sum_rate = 0.0;       // under full interference
  double sequential_value = 0.0;
  std::vector<std::size_t> order;
  std::vector<TraceRecord> trace;
  std::size_t iterations = 0;  // placement iterations, always J
};

// UAVs in decreasing quota order each take the free cell maximizing the
// sum of their best min(N_j, remaining) QoS-satisfying rates, with
// interference from already placed UAVs only, and keep those users.
AdaptedGreedyResult AdaptedGreedy(const Scenario& scenario, int workers = 0);

// --- Set-function property checks -----------------------------------------

struct GroundSetElement {
  std::size_t user = 0;
  std::size_t uav = 0;
  std::size_t config = 0;
  bool operator==(const GroundSetElement&) const = default;
};

enum class SetFunctionMode {
  // Interference fixed by the configuration.
  kFixedInterference,
  // Negative control: only UAVs holding an element of the set transmit.
  kActiveInterferenceOnly,
};

// QoS-feasible (user, uav) pairs of one configuration, user-major order.
std::vector<GroundSetElement> FeasibleGroundSet(const RateTable& table,
                                                std::size_t config = 0);

// f^k(A): per UAV, the rates of its best N_j elements by spectral
// efficiency; a further element displaces the lowest incumbent.
double EvaluateSetFunction(const std::vector<GroundSetElement>& set,
                           const RateTable& table,
                           SetFunctionMode mode = SetFunctionMode::kFixedInterference);

struct SubmodularityWitness {
  std::string kind;  // "monotonicity" or "submodularity"
  std::vector<GroundSetElement> a;
  std::vector<GroundSetElement> b;
  std::optional<GroundSetElement> element;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct SubmodularityReport {
  std::size_t ground_set_size = 0;
  std::size_t pairs_checked = 0;
  std::size_t monotonicity_violations = 0;
  std::size_t submodularity_violations = 0;
  std::optional<SubmodularityWitness> witness;

  bool ok() const {
    return monotonicity_violations == 0 && submodularity_violations == 0;
  }
};

// Exhaustive check over all chains A <= B of the feasible ground set and
// elements a outside B. Throws BudgetExceeded when the ground set is larger
// than exhaustive_limit (hard cap 20).
SubmodularityReport CheckSubmodularMonotone(
    const Placement& placement, const Scenario& scenario,
    std::size_t exhaustive_limit = 12,
    SetFunctionMode mode = SetFunctionMode::kFixedInterference);

struct MatroidReport {
  std::size_t sets_sampled = 0;
  bool empty_set_independent = false;
  std::size_t hereditary_violations = 0;
  std::size_t augmentation_checks = 0;
  std::size_t augmentation_violations = 0;
  // Pairs from different configurations with no augmenting element.
  // Expected; not a violation of the same-configuration property.
  std::size_t cross_config_augmentation_failures = 0;

  bool ok() const {
    return empty_set_independent && hereditary_violations == 0 &&
           augmentation_violations == 0;
  }
};

// Per-configuration cap on independent sets: min(I, sum_j N_j).
std::size_t ConfigurationCap(const Scenario& scenario);

// Independent iff all elements share one configuration, are distinct and
// number at most the cap.
bool IsIndependent(const std::vector<GroundSetElement>& set, std::size_t cap);

MatroidReport CheckPartitionMatroid(const ConfigurationSet& configs,
                                    const Scenario& scenario,
                                    std::size_t sample, Rng& rng);

// ---------------------------------------------------------------------------

template <typename Visit>
void ForEachPlacement(const Scenario& scenario, Visit&& visit) {
  const std::size_t grid_size = scenario.grid().size();
  const std::size_t num_uavs = scenario.num_uavs();
  Placement placement{std::vector<std::size_t>(num_uavs, 0)};
  while (true) {
    if (IsValidPlacement(placement, scenario)) visit(placement);
    std::size_t k = num_uavs;
    while (k > 0) {
      --k;
      if (++placement.cells[k] < grid_size) break;
      placement.cells[k] = 0;
      if (k == 0) return;
    }
  }
}

}  // namespace uavopt

#endif  // UAVOPT_GREEDY_H_
