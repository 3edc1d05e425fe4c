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

#include "uavopt/runner.h"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>

#include "uavopt/errors.h"
#include "uavopt/objective.h"
#include "uavopt/parallel.h"
#include "uavopt/scenario_io.h"

namespace uavopt {
namespace {

using nlohmann::json;

constexpr double kOneMinusInvE = 1.0 - 0.36787944117144233;
constexpr std::uint64_t kValidateStream = 11;

std::string FormatDouble(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

void WriteJson(const std::filesystem::path& path, const json& doc) {
  WriteFile(path, doc.dump(2) + "\n");
}

std::string_view CoolingName(Cooling c) {
  return c == Cooling::kLogarithmic ? "logarithmic" : "constant";
}

std::string_view ActivationName(Activation a) {
  return a == Activation::kUniformSingle ? "uniform_single" : "coin_flip";
}

json GreedyJson(const GreedyResult& g, const Scenario& scenario) {
  return {{"sum_rate_bps", g.best_value},
          {"best_config_index", g.best_index},
          {"placement", PlacementToJson(g.best_placement, scenario)},
          {"association", AssociationToJson(g.best_association)},
          {"iterations", g.iterations},
          {"num_configs", g.values.size()},
          {"config_values_bps", g.values}};
}

}  // namespace

std::optional<Algorithm> ParseAlgorithm(std::string_view name) {
  for (Algorithm a : {Algorithm::kBlll, Algorithm::kGreedy,
                      Algorithm::kKmeansGreedy, Algorithm::kAdaptedGreedy,
                      Algorithm::kOracle, Algorithm::kValidate,
                      Algorithm::kSweep}) {
    if (AlgorithmName(a) == name) return a;
  }
  return std::nullopt;
}

std::string_view AlgorithmName(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kBlll: return "blll";
    case Algorithm::kGreedy: return "greedy";
    case Algorithm::kKmeansGreedy: return "kmeans_greedy";
    case Algorithm::kAdaptedGreedy: return "adapted_greedy";
    case Algorithm::kOracle: return "oracle";
    case Algorithm::kValidate: return "validate";
    case Algorithm::kSweep: return "sweep";
  }
  return "unknown";
}

void RunManifest::Validate() const {
  if (scenario_path.empty()) throw InstanceError("manifest needs a scenario");
  if (!std::filesystem::exists(scenario_path)) {
    throw InstanceError("scenario file not found: " + scenario_path.string());
  }
  if (configs_path && !std::filesystem::exists(*configs_path)) {
    throw InstanceError("configuration file not found: " +
                        configs_path->string());
  }
  if (configs_path && algorithm != Algorithm::kGreedy) {
    throw InstanceError("--configs only applies to the greedy algorithm");
  }
  if (range_frac && !(*range_frac >= 0 && *range_frac <= 1)) {
    throw InstanceError("range fraction must lie in [0, 1]");
  }
  for (double f : sweep_ranges) {
    if (!(f >= 0 && f <= 1)) {
      throw InstanceError("sweep range fractions must lie in [0, 1]");
    }
  }
  if (iters < 1) throw InstanceError("iterations must be >= 1");
  if (trace_stride < 1) throw InstanceError("trace stride must be >= 1");
  if (t0 && !(*t0 > 0)) throw InstanceError("t0 must be > 0");
  budget.Validate();
}

json ManifestToJson(const RunManifest& m) {
  json j = {{"scenario", m.scenario_path.string()},
            {"algorithm", AlgorithmName(m.algorithm)},
            {"out", m.out_dir.string()},
            {"seed", m.seed},
            {"iters", m.iters},
            {"cooling", CoolingName(m.cooling)},
            {"activation", ActivationName(m.activation)},
            {"trace_stride", m.trace_stride},
            {"kmeans_rounds", m.kmeans.kmeans_rounds},
            {"permute", m.kmeans.permute},
            {"max_configs", m.budget.max_configs},
            {"max_assoc_states", m.budget.max_assoc_states},
            {"sweep_ranges", m.sweep_ranges},
            {"sweep_seeds", m.sweep_seeds}};
  j["t0"] = m.t0 ? json(*m.t0) : json(nullptr);
  j["range_frac"] = m.range_frac ? json(*m.range_frac) : json(nullptr);
  j["configs"] = m.configs_path ? json(m.configs_path->string()) : json(nullptr);
  return j;
}

RunManifest ManifestFromJson(const json& j) {
  RunManifest m;
  m.scenario_path = j.at("scenario").get<std::string>();
  const auto algo = ParseAlgorithm(j.value("algorithm", std::string("blll")));
  if (!algo) throw InstanceError("unknown algorithm in manifest");
  m.algorithm = *algo;
  m.out_dir = j.value("out", std::string("out"));
  m.seed = j.value("seed", std::uint64_t{1});
  m.iters = j.value("iters", m.iters);
  if (j.contains("t0") && !j["t0"].is_null()) m.t0 = j["t0"].get<double>();
  const std::string cooling = j.value("cooling", std::string("logarithmic"));
  if (cooling != "logarithmic" && cooling != "constant") {
    throw InstanceError("cooling must be logarithmic or constant");
  }
  m.cooling = cooling == "constant" ? Cooling::kConstant : Cooling::kLogarithmic;
  const std::string activation =
      j.value("activation", std::string("uniform_single"));
  if (activation != "uniform_single" && activation != "coin_flip") {
    throw InstanceError("activation must be uniform_single or coin_flip");
  }
  m.activation = activation == "coin_flip" ? Activation::kCoinFlip
                                           : Activation::kUniformSingle;
  if (j.contains("range_frac") && !j["range_frac"].is_null()) {
    m.range_frac = j["range_frac"].get<double>();
  }
  m.trace_stride = j.value("trace_stride", m.trace_stride);
  if (j.contains("configs") && !j["configs"].is_null()) {
    m.configs_path = j["configs"].get<std::string>();
  }
  m.kmeans.kmeans_rounds = j.value("kmeans_rounds", m.kmeans.kmeans_rounds);
  m.kmeans.permute = j.value("permute", m.kmeans.permute);
  m.budget.max_configs = j.value("max_configs", m.budget.max_configs);
  m.budget.max_assoc_states =
      j.value("max_assoc_states", m.budget.max_assoc_states);
  m.sweep_ranges = j.value("sweep_ranges", std::vector<double>{});
  m.sweep_seeds = j.value("sweep_seeds", std::vector<std::uint64_t>{});
  return m;
}

BlllConfig MakeBlllConfig(const RunManifest& m, const Scenario& scenario) {
  BlllConfig config;
  config.t0 = m.t0;
  config.cooling = m.cooling;
  config.activation = m.activation;
  config.max_iters = m.iters;
  config.seed = m.seed;
  config.trace_stride = m.trace_stride;
  if (m.range_frac && *m.range_frac < 1.0) {
    config.neighborhood_range_m = *m.range_frac * scenario.grid().Diagonal();
  }
  return config;
}

std::string TraceToCsv(const std::vector<TraceRecord>& trace) {
  std::string out = "iter,temperature,mover,accepted,sum_rate_bps,best_sum_rate_bps\n";
  for (const TraceRecord& r : trace) {
    out += std::to_string(r.iter);
    out += ',';
    if (r.temperature) out += FormatDouble(*r.temperature);
    out += ',';
    if (r.mover) out += std::to_string(*r.mover);
    out += ',';
    if (r.accepted) out += *r.accepted ? '1' : '0';
    out += ',';
    out += FormatDouble(r.sum_rate_bps);
    out += ',';
    out += FormatDouble(r.best_sum_rate_bps);
    out += '\n';
  }
  return out;
}

std::vector<TraceRecord> ValuesToTrace(const std::vector<double>& values) {
  std::vector<TraceRecord> trace;
  trace.reserve(values.size());
  double best = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k == 0 || values[k] > best) best = values[k];
    trace.push_back({k + 1, std::nullopt, std::nullopt, std::nullopt,
                     values[k], best});
  }
  return trace;
}

std::vector<SweepRow> SweepNeighborhoodRange(
    const Scenario& scenario, const std::vector<double>& fracs,
    const std::vector<std::uint64_t>& seeds, const BlllConfig& base,
    int workers) {
  std::vector<SweepRow> rows;
  if (seeds.empty() || fracs.empty()) return rows;
  if (workers <= 0) workers = WorkerCount();
  const double diagonal = scenario.grid().Diagonal();

  // One cell per (range, seed); each writes its own slot.
  const std::size_t cells = fracs.size() * seeds.size();
  std::vector<double> finals(cells, 0.0);
  ParallelFor(cells, workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t c = begin; c < end; ++c) {
      BlllConfig config = base;
      config.seed = seeds[c % seeds.size()];
      const double frac = fracs[c / seeds.size()];
      config.neighborhood_range_m =
          frac >= 1.0 ? std::nullopt : std::optional<double>(frac * diagonal);
      finals[c] = RunBlll(scenario, config).final_sum_rate;
    }
  });

  double kmeans_mean = 0.0;
  for (std::uint64_t seed : seeds) {
    Rng rng(seed);
    kmeans_mean += CombinedKmeansGreedy(scenario, rng).greedy.best_value;
  }
  kmeans_mean /= static_cast<double>(seeds.size());
  const double adapted = AdaptedGreedy(scenario).sum_rate;

  for (std::size_t r = 0; r < fracs.size(); ++r) {
    SweepRow row;
    row.range_frac = fracs[r];
    row.range_m = fracs[r] * diagonal;
    row.runs = seeds.size();
    for (std::size_t s = 0; s < seeds.size(); ++s) {
      row.mean_bps += finals[r * seeds.size() + s];
    }
    row.mean_bps /= static_cast<double>(seeds.size());
    for (std::size_t s = 0; s < seeds.size(); ++s) {
      const double d = finals[r * seeds.size() + s] - row.mean_bps;
      row.stddev_bps += d * d;
    }
    row.stddev_bps = std::sqrt(row.stddev_bps / static_cast<double>(seeds.size()));
    row.kmeans_greedy_bps = kmeans_mean;
    row.adapted_greedy_bps = adapted;
    rows.push_back(row);
  }
  return rows;
}

std::string SweepToCsv(const std::vector<SweepRow>& rows) {
  std::string out =
      "range_frac,range_m,mean_sum_rate_bps,stddev_sum_rate_bps,runs,"
      "kmeans_greedy_bps,adapted_greedy_bps\n";
  for (const SweepRow& r : rows) {
    out += FormatDouble(r.range_frac) + ',' + FormatDouble(r.range_m) + ',' +
           FormatDouble(r.mean_bps) + ',' + FormatDouble(r.stddev_bps) + ',' +
           std::to_string(r.runs) + ',' + FormatDouble(r.kmeans_greedy_bps) +
           ',' + FormatDouble(r.adapted_greedy_bps) + '\n';
  }
  return out;
}

ValidationReport Validate(const Scenario& scenario, std::uint64_t seed,
                          const OracleBudget& budget) {
  ValidationReport report;
  Rng rng(DeriveSeed(seed, kValidateStream));
  const std::size_t num_users = scenario.num_users();
  const std::size_t num_uavs = scenario.num_uavs();

  // Random quota-respecting association over users.
  auto random_column = [&](Association& q, std::size_t j) {
    q.ClearColumn(j);
    std::vector<std::size_t> pool;
    for (std::size_t i = 0; i < num_users; ++i) {
      if (q.RowSum(i) == 0) pool.push_back(i);
    }
    const std::size_t cap = std::min<std::size_t>(
        pool.size(), static_cast<std::size_t>(scenario.uavs()[j].quota));
    const std::size_t size = rng.UniformIndex(cap + 1);
    for (std::size_t k = 0; k < size; ++k) {
      std::swap(pool[k], pool[k + rng.UniformIndex(pool.size() - k)]);
      q.Set(pool[k], j, true);
    }
  };

  constexpr std::size_t kPotentialSamples = 200;
  for (std::size_t s = 0; s < kPotentialSamples; ++s) {
    JointAction a{RandomPlacement(scenario, rng),
                  Association(num_users, num_uavs)};
    for (std::size_t j = 0; j < num_uavs; ++j) random_column(a.association, j);
    const std::size_t mover = rng.UniformIndex(num_uavs);
    JointAction b = a;
    Placement moved = a.placement;
    do {
      moved.cells[mover] = rng.UniformIndex(scenario.grid().size());
    } while (!IsValidPlacement(moved, scenario));
    b.placement = moved;
    random_column(b.association, mover);
    const double residual =
        PotentialIdentityResidual(mover, a, b, scenario);
    const double scale =
        std::max({std::abs(SumRate(a.association, a.placement, scenario,
                                   Evaluation::kDropQosViolations)),
                  std::abs(SumRate(b.association, b.placement, scenario,
                                   Evaluation::kDropQosViolations)),
                  1.0});
    report.max_potential_residual =
        std::max(report.max_potential_residual, residual / scale);
    ++report.potential_samples;
  }

  const ConfigurationSet configs =
      ExhaustiveConfigurations(scenario, static_cast<std::size_t>(budget.max_configs));
  const std::size_t stride = std::max<std::size_t>(1, configs.size() / 50);
  for (std::size_t k = 0; k < configs.size(); k += stride) {
    try {
      const SubmodularityReport sub =
          CheckSubmodularMonotone(configs.placements[k], scenario, 12);
      ++report.submodularity_configs;
      report.submodularity_violations +=
          sub.monotonicity_violations + sub.submodularity_violations;
    } catch (const BudgetExceeded&) {
      // Ground set too large for the exhaustive check; skipped.
    }
  }

  const MatroidReport matroid = CheckPartitionMatroid(configs, scenario, 200, rng);
  report.matroid_violations = matroid.hereditary_violations +
                              matroid.augmentation_violations +
                              (matroid.empty_set_independent ? 0 : 1);

  const GlobalOptimum opt = FindGlobalOptimum(scenario, budget);
  const GreedyResult greedy = GreedyOverConfigs(configs, scenario);
  report.optimum_bps = opt.value;
  report.greedy_bps = greedy.best_value;
  if (greedy.best_value < kOneMinusInvE * opt.value) ++report.greedy_bound_violations;

  report.adapted_greedy_bps = AdaptedGreedy(scenario).sum_rate;
  BlllConfig blll;
  blll.seed = seed;
  blll.max_iters = 20000;
  blll.trace_stride = 20000;
  report.blll_bps = RunBlll(scenario, blll).best_sum_rate;
  const double tol = 1e-9 * std::max(1.0, opt.value);
  for (double v : {report.greedy_bps, report.adapted_greedy_bps, report.blll_bps}) {
    if (v > opt.value + tol) ++report.dominance_violations;
  }
  return report;
}

json ValidationToJson(const ValidationReport& r) {
  return {{"violations", r.violations()},
          {"max_potential_residual_rel", r.max_potential_residual},
          {"potential_samples", r.potential_samples},
          {"submodularity_configs", r.submodularity_configs},
          {"submodularity_violations", r.submodularity_violations},
          {"matroid_violations", r.matroid_violations},
          {"greedy_bound_violations", r.greedy_bound_violations},
          {"dominance_violations", r.dominance_violations},
          {"optimum_bps", r.optimum_bps},
          {"greedy_bps", r.greedy_bps},
          {"adapted_greedy_bps", r.adapted_greedy_bps},
          {"blll_best_bps", r.blll_bps}};
}

int RunManifestToDisk(const RunManifest& manifest, std::ostream& log) {
  try {
    manifest.Validate();
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    return kExitFailure;
  }

  std::optional<Scenario> loaded;
  try {
    loaded.emplace(LoadScenario(manifest.scenario_path));
  } catch (const ScenarioParseError& e) {
    log << manifest.scenario_path.string() << ":" << e.line() << ":"
        << e.column() << ": error: " << e.what() << "\n";
    return kExitMalformedScenario;
  } catch (const nlohmann::json::exception& e) {
    log << manifest.scenario_path.string() << ":1:1: error: " << e.what() << "\n";
    return kExitMalformedScenario;
  } catch (const InstanceError& e) {
    log << manifest.scenario_path.string()
        << ": infeasible scenario: " << e.what() << "\n";
    return kExitInfeasibleScenario;
  }
  const Scenario& scenario = *loaded;

  try {
    std::filesystem::create_directories(manifest.out_dir);
    const auto start = std::chrono::steady_clock::now();
    json result = {{"algorithm", AlgorithmName(manifest.algorithm)},
                   {"seed", manifest.seed}};
    std::vector<TraceRecord> trace;
    int status = kExitOk;

    switch (manifest.algorithm) {
      case Algorithm::kBlll: {
        const BlllConfig config = MakeBlllConfig(manifest, scenario);
        const BlllResult r = RunBlll(scenario, config);
        trace = r.trace;
        result["sum_rate_bps"] = r.best_sum_rate;
        result["placement"] = PlacementToJson(r.best_placement, scenario);
        result["association"] = AssociationToJson(r.best_association);
        result["final_sum_rate_bps"] = r.final_sum_rate;
        result["final_placement"] = PlacementToJson(r.final_placement, scenario);
        result["final_association"] = AssociationToJson(r.final_association);
        result["final_utilities_bps"] = r.final_utilities;
        result["iterations"] = r.iterations;
        result["accepted"] = r.accepted;
        result["t0"] = r.t0;
        result["neighborhood_range_m"] =
            config.neighborhood_range_m ? json(*config.neighborhood_range_m)
                                        : json(nullptr);
        break;
      }
      case Algorithm::kGreedy: {
        const ConfigurationSet configs =
            manifest.configs_path
                ? LoadConfigurations(*manifest.configs_path, scenario)
                : ExhaustiveConfigurations(
                      scenario,
                      static_cast<std::size_t>(manifest.budget.max_configs));
        const GreedyResult g = GreedyOverConfigs(configs, scenario);
        trace = ValuesToTrace(g.values);
        result.update(GreedyJson(g, scenario));
        result["provenance"] =
            configs.provenance == ConfigProvenance::kExplicit ? "explicit"
                                                              : "exhaustive";
        break;
      }
      case Algorithm::kKmeansGreedy: {
        Rng rng(manifest.seed);
        const KmeansGreedyResult k =
            CombinedKmeansGreedy(scenario, rng, manifest.kmeans);
        trace = ValuesToTrace(k.greedy.values);
        result.update(GreedyJson(k.greedy, scenario));
        result["provenance"] = "kmeans_reduced";
        json centers = json::array();
        for (const Point2& c : k.centers) centers.push_back({c.x, c.y});
        result["kmeans_centers"] = centers;
        result["initial_placement"] = PlacementToJson(k.initial, scenario);
        break;
      }
      case Algorithm::kAdaptedGreedy: {
        const AdaptedGreedyResult a = AdaptedGreedy(scenario);
        trace = a.trace;
        result["sum_rate_bps"] = a.sum_rate;
        result["sequential_value_bps"] = a.sequential_value;
        result["placement"] = PlacementToJson(a.placement, scenario);
        result["association"] = AssociationToJson(a.association);
        result["iterations"] = a.iterations;
        result["order"] = a.order;
        break;
      }
      case Algorithm::kOracle: {
        const GlobalOptimum o = FindGlobalOptimum(scenario, manifest.budget);
        trace = ValuesToTrace(o.values);
        result["sum_rate_bps"] = o.value;
        result["placement"] = PlacementToJson(o.placement, scenario);
        result["association"] = AssociationToJson(o.association);
        result["iterations"] = o.configs_evaluated;
        break;
      }
      case Algorithm::kValidate: {
        const ValidationReport v =
            Validate(scenario, manifest.seed, manifest.budget);
        result["report"] = ValidationToJson(v);
        result["sum_rate_bps"] = v.optimum_bps;
        if (v.violations() > 0) status = kExitFailure;
        break;
      }
      case Algorithm::kSweep: {
        BlllConfig base = MakeBlllConfig(manifest, scenario);
        base.neighborhood_range_m.reset();
        const std::vector<SweepRow> rows = SweepNeighborhoodRange(
            scenario, manifest.sweep_ranges, manifest.sweep_seeds, base);
        WriteFile(manifest.out_dir / "sweep.csv", SweepToCsv(rows));
        result["rows"] = rows.size();
        break;
      }
    }

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    WriteFile(manifest.out_dir / "trace.csv", TraceToCsv(trace));
    WriteJson(manifest.out_dir / "result.json", result);
    WriteJson(manifest.out_dir / "meta.json",
              {{"manifest", ManifestToJson(manifest)},
               {"seed", manifest.seed},
               {"scenario", ScenarioToJson(scenario)},
               {"wall_time_s", wall}});
    return status;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace uavopt
