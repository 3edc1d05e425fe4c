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

#ifndef UAVOPT_RUNNER_H_
#define UAVOPT_RUNNER_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "uavopt/blll.h"
#include "uavopt/greedy.h"
#include "uavopt/oracle.h"
#include "uavopt/trace.h"

namespace uavopt {

enum class Algorithm {
  kBlll,
  kGreedy,
  kKmeansGreedy,
  kAdaptedGreedy,
  kOracle,
  kValidate,
  kSweep,
};

std::optional<Algorithm> ParseAlgorithm(std::string_view name);
std::string_view AlgorithmName(Algorithm algorithm);

// Process exit statuses of a manifest run.
enum ExitStatus : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitMalformedScenario = 2,
  kExitInfeasibleScenario = 3,
};

struct RunManifest {
  std::filesystem::path scenario_path;
  Algorithm algorithm = Algorithm::kBlll;
  std::filesystem::path out_dir = "out";
  std::uint64_t seed = 1;

  // Log-linear learning.
  std::size_t iters = 20000;
  std::optional<double> t0;
  Cooling cooling = Cooling::kLogarithmic;
  Activation activation = Activation::kUniformSingle;
  // Neighbourhood range as a fraction of the search-box diagonal.
  std::optional<double> range_frac;
  std::size_t trace_stride = 1;

  // Configuration greedy: explicit set, else the exhaustive one.
  std::optional<std::filesystem::path> configs_path;
  KmeansGreedyOptions kmeans;
  OracleBudget budget;

  // Sweep.
  std::vector<double> sweep_ranges;
  std::vector<std::uint64_t> sweep_seeds;

  // Throws InstanceError for inconsistent settings or missing files.
  void Validate() const;
};

nlohmann::json ManifestToJson(const RunManifest& manifest);
RunManifest ManifestFromJson(const nlohmann::json& j);

// BLLL settings implied by the manifest (range_frac resolved on `scenario`).
BlllConfig MakeBlllConfig(const RunManifest& manifest, const Scenario& scenario);

// Writes trace.csv, result.json and meta.json into out_dir (sweep.csv for
// sweeps). Errors are reported on `log`; the return value is an ExitStatus.
int RunManifestToDisk(const RunManifest& manifest, std::ostream& log);

// iter,temperature,mover,accepted,sum_rate_bps,best_sum_rate_bps
std::string TraceToCsv(const std::vector<TraceRecord>& trace);

// Per-configuration values as trace rows with a running best.
std::vector<TraceRecord> ValuesToTrace(const std::vector<double>& values);

struct SweepRow {
  double range_frac = 0.0;
  double range_m = 0.0;
  double mean_bps = 0.0;
  double stddev_bps = 0.0;
  std::size_t runs = 0;
  double kmeans_greedy_bps = 0.0;   // mean over the seeds
  double adapted_greedy_bps = 0.0;
};

// BLLL final sum-rate per range fraction across seeds, with the k-means
// greedy and adapted greedy values as constant baseline columns. A
// fraction >= 1 runs the unranged utility. Empty seeds give an empty table.
std::vector<SweepRow> SweepNeighborhoodRange(const Scenario& scenario,
                                             const std::vector<double>& fracs,
                                             const std::vector<std::uint64_t>& seeds,
                                             const BlllConfig& base,
                                             int workers = 0);

std::string SweepToCsv(const std::vector<SweepRow>& rows);

struct ValidationReport {
  double max_potential_residual = 0.0;  // relative
  std::size_t potential_samples = 0;
  std::size_t submodularity_configs = 0;
  std::size_t submodularity_violations = 0;
  std::size_t matroid_violations = 0;
  std::size_t greedy_bound_violations = 0;
  std::size_t dominance_violations = 0;
  double optimum_bps = 0.0;
  double greedy_bps = 0.0;
  double adapted_greedy_bps = 0.0;
  double blll_bps = 0.0;

  std::size_t violations() const {
    return (max_potential_residual > 1e-9 ? 1 : 0) + submodularity_violations +
           matroid_violations + greedy_bound_violations + dominance_violations;
  }
};

// Property suite for a desk-scale scenario.
ValidationReport Validate(const Scenario& scenario, std::uint64_t seed,
                          const OracleBudget& budget = {});

nlohmann::json ValidationToJson(const ValidationReport& report);

}  // namespace uavopt

#endif  // UAVOPT_RUNNER_H_
