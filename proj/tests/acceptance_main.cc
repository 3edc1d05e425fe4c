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

// Acceptance run: one PASS/FAIL line per criterion. Exits non-zero when any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "uavopt/blll.h"
#include "uavopt/greedy.h"
#include "uavopt/objective.h"
#include "uavopt/oracle.h"
#include "uavopt/runner.h"
#include "uavopt/scenario_io.h"
#include "uavopt/scenarios.h"

namespace uavopt {
namespace {

namespace fs = std::filesystem;

constexpr double kOneMinusInvE = 1.0 - 0.36787944117144233;

struct Outcome {
  bool pass = false;
  std::string detail;
};

fs::path ScenarioFile(const char* name) {
  return fs::path(UAVOPT_SCENARIO_DIR) / name;
}

std::string Fmt(const char* format, double a, double b = 0, double c = 0,
                double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, a, b, c, d);
  return buf;
}

// Random quota-respecting column for `uav` over users no other UAV holds.
void RandomColumn(Association& q, std::size_t uav, const Scenario& s, Rng& rng) {
  q.ClearColumn(uav);
  for (std::size_t i = 0; i < s.num_users(); ++i) {
    if (q.RowSum(i) == 0 && rng.Bernoulli(0.5) &&
        q.ColumnSum(uav) < static_cast<std::size_t>(s.uavs()[uav].quota)) {
      q.Set(i, uav, true);
    }
  }
}

Outcome PotentialIdentity() {
  double worst = 0.0;
  std::size_t samples = 0;
  for (std::uint64_t inst = 1; inst <= 20; ++inst) {
    const Scenario s = RandomDeskScenario(inst, 3 + inst % 4, 2 + inst % 2);
    Rng rng(DeriveSeed(inst, 100));
    for (int k = 0; k < 50; ++k) {
      JointAction a{RandomPlacement(s, rng),
                    Association(s.num_users(), s.num_uavs())};
      for (std::size_t j = 0; j < s.num_uavs(); ++j) {
        RandomColumn(a.association, j, s, rng);
      }
      // Keep the joint action feasible: drop links under the QoS floor.
      a.association = DropQosViolations(a.association, RateTable(a.placement, s));
      const std::size_t j = rng.UniformIndex(s.num_uavs());
      JointAction b = a;
      do {
        b.placement.cells[j] = rng.UniformIndex(s.grid().size());
      } while (!IsValidPlacement(b.placement, s));
      // Other UAVs' links that the move pushes under the floor stay in q
      // and count for nothing.
      RandomColumn(b.association, j, s, rng);
      const double scale =
          std::max({1.0, SumRate(a.association, a.placement, s),
                    SumRate(b.association, b.placement, s,
                            Evaluation::kDropQosViolations)});
      worst = std::max(worst, PotentialIdentityResidual(j, a, b, s) / scale);
      ++samples;
    }
  }
  return {worst <= 1e-9,
          std::to_string(samples) + " deviations, max relative residual " +
              Fmt("%.3g", worst)};
}

Outcome BlllOptimality() {
  const Scenario s = LoadScenario(ScenarioFile("desk.json"));
  const double opt = FindGlobalOptimum(s).value;
  int hits = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    BlllConfig config;
    config.seed = seed;
    config.max_iters = 50000;
    config.trace_stride = config.max_iters;
    const BlllResult r = RunBlll(s, config);
    if (std::abs(r.best_sum_rate - opt) <= 1e-9 * opt) ++hits;
  }
  return {hits >= 18, std::to_string(hits) + "/20 runs reach the optimum " +
                          Fmt("%.6g bit/s", opt)};
}

Outcome GreedyBound() {
  int violations = 0;
  double worst_ratio = 1.0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const Scenario s = RandomDeskScenario(seed, 3 + seed % 3, 2 + seed % 2);
    const GlobalOptimum opt = FindGlobalOptimum(s);
    const GreedyResult g =
        GreedyOverConfigs(ExhaustiveConfigurations(s, 1000000), s);
    if (g.best_value < kOneMinusInvE * opt.value) ++violations;
    if (opt.value > 0) worst_ratio = std::min(worst_ratio, g.best_value / opt.value);
  }
  return {violations == 0, std::to_string(violations) +
                               " violations on 50 instances, worst ratio " +
                               Fmt("%.4f", worst_ratio)};
}

Outcome Submodularity() {
  std::size_t violations = 0;
  std::size_t control = 0;
  std::size_t checked = 0;
  std::size_t largest = 0;
  Rng rng(404);
  for (std::uint64_t k = 1; checked < 50; ++k) {
    const Scenario s = RandomDeskScenario(k, 4 + k % 3, 2 + k % 2);
    const Placement p = RandomPlacement(s, rng);
    if (FeasibleGroundSet(RateTable(p, s)).size() > 12) continue;
    const SubmodularityReport r = CheckSubmodularMonotone(p, s, 12);
    violations += r.monotonicity_violations + r.submodularity_violations;
    const SubmodularityReport neg = CheckSubmodularMonotone(
        p, s, 12, SetFunctionMode::kActiveInterferenceOnly);
    control += neg.monotonicity_violations + neg.submodularity_violations;
    largest = std::max(largest, r.ground_set_size);
    ++checked;
  }
  return {violations == 0 && control >= 1,
          std::to_string(checked) + " configurations (ground sets up to " +
              std::to_string(largest) + "), " + std::to_string(violations) +
              " violations, negative control " + std::to_string(control)};
}

Outcome IterationCounts() {
  const Scenario s = LoadScenario(ScenarioFile("baseline.json"));
  const AdaptedGreedyResult adapted = AdaptedGreedy(s);
  Rng rng(1);
  const KmeansGreedyResult kg = CombinedKmeansGreedy(s, rng);
  const double bound = static_cast<double>(kg.num_configs) *
                       static_cast<double>(s.num_users() * s.num_uavs());
  const bool pass = adapted.iterations == s.num_uavs() &&
                    static_cast<double>(kg.greedy.iterations) <= bound;
  return {pass, "adapted greedy " + std::to_string(adapted.iterations) +
                    " iterations (J=" + std::to_string(s.num_uavs()) +
                    "), greedy " + std::to_string(kg.greedy.iterations) +
                    " steps <= K*I*J = " + Fmt("%.0f", bound)};
}

Outcome AlgorithmOrdering() {
  double blll = 0.0, kmeans = 0.0, adapted = 0.0;
  bool bound_ok = true;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Scenario s = BaselineScenario(seed);
    BlllConfig config;
    config.seed = seed;
    config.max_iters = 1000000;
    config.trace_stride = config.max_iters;
    const double b = RunBlll(s, config).final_sum_rate;
    Rng rng(seed);
    const double k = CombinedKmeansGreedy(s, rng).greedy.best_value;
    const double a = AdaptedGreedy(s).sum_rate;
    const double best = std::max({b, k, a});
    bound_ok = bound_ok && std::min({b, k, a}) >= kOneMinusInvE * best;
    blll += b / 10;
    kmeans += k / 10;
    adapted += a / 10;
  }
  const bool pass = blll >= 0.98 * kmeans && kmeans >= 0.95 * adapted && bound_ok;
  return {pass, Fmt("mean Mbit/s: blll %.2f, kmeans-greedy %.2f, adapted %.2f; ",
                    blll / 1e6, kmeans / 1e6, adapted / 1e6) +
                    (bound_ok ? "all within 1-1/e of best" : "1-1/e bound missed")};
}

Outcome RangeTrend() {
  const Scenario s = LoadScenario(ScenarioFile("range_study.json"));
  BlllConfig base;
  base.max_iters = 1000000;
  base.trace_stride = base.max_iters;
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t k = 1; k <= 10; ++k) seeds.push_back(k);
  const std::vector<SweepRow> rows =
      SweepNeighborhoodRange(s, {0.1, 1.0}, seeds, base);
  const SweepRow& narrow = rows[0];
  const SweepRow& full = rows[1];
  const bool pass = full.mean_bps > narrow.mean_bps &&
                    narrow.kmeans_greedy_bps > narrow.mean_bps;
  return {pass, Fmt("mean Mbit/s: range 1.0 %.2f, range 0.1 %.2f, "
                    "kmeans-greedy %.2f",
                    full.mean_bps / 1e6, narrow.mean_bps / 1e6,
                    narrow.kmeans_greedy_bps / 1e6)};
}

Outcome Determinism() {
  const fs::path root = fs::temp_directory_path() / "uavopt_acceptance";
  fs::remove_all(root);
  std::size_t compared = 0;
  std::vector<std::string> differing;
  struct Case {
    const char* scenario;
    Algorithm algorithm;
  };
  const Case cases[] = {{"desk.json", Algorithm::kBlll},
                        {"desk.json", Algorithm::kGreedy},
                        {"desk.json", Algorithm::kOracle},
                        {"desk.json", Algorithm::kValidate},
                        {"baseline.json", Algorithm::kBlll},
                        {"baseline.json", Algorithm::kKmeansGreedy},
                        {"baseline.json", Algorithm::kAdaptedGreedy}};
  for (const Case& c : cases) {
    const std::string tag =
        std::string(c.scenario) + "_" + std::string(AlgorithmName(c.algorithm));
    for (const char* run : {"a", "b"}) {
      RunManifest m;
      m.scenario_path = ScenarioFile(c.scenario);
      m.algorithm = c.algorithm;
      m.out_dir = root / (tag + run);
      m.seed = 12345;
      m.iters = 20000;
      std::ostringstream log;
      if (RunManifestToDisk(m, log) != kExitOk) differing.push_back(tag + " (run failed)");
    }
    for (const char* file : {"trace.csv", "result.json"}) {
      if (ReadTextFile(root / (tag + "a") / file) !=
          ReadTextFile(root / (tag + "b") / file)) {
        differing.push_back(tag + "/" + file);
      }
      ++compared;
    }
  }
  std::string detail = std::to_string(compared) + " file pairs compared";
  for (const std::string& d : differing) detail += ", differs: " + d;
  return {differing.empty(), detail};
}

}  // namespace
}  // namespace uavopt

int main() {
  using namespace uavopt;
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "potential-game identity", PotentialIdentity},
      {2, "BLLL reaches the desk optimum", BlllOptimality},
      {3, "greedy 1-1/e bound", GreedyBound},
      {4, "submodularity and monotonicity", Submodularity},
      {5, "iteration counts", IterationCounts},
      {6, "algorithm ordering", AlgorithmOrdering},
      {7, "neighbourhood range trend", RangeTrend},
      {8, "determinism", Determinism}};
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("error: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    std::printf("%s criterion %d (%s): %s [%.1f s]\n",
                outcome.pass ? "PASS" : "FAIL", c.id, c.name,
                outcome.detail.c_str(), seconds);
    std::fflush(stdout);
    if (!outcome.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
