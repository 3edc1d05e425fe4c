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

// Command-line driver: runs one algorithm on a scenario file and writes
// trace.csv, result.json and meta.json into the output directory.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "uavopt/runner.h"

int main(int argc, char** argv) {
  CLI::App app{"UAV placement and user association sum-rate optimizer"};
  uavopt::RunManifest m;
  std::string manifest_path;
  std::string algo = "blll";
  std::string cooling = "logarithmic";
  std::string activation = "uniform_single";
  std::string scenario;
  std::string out = "out";
  std::string configs;
  double t0 = 0.0;
  double range_frac = 1.0;

  app.add_option("--manifest", manifest_path, "JSON run manifest")
      ->check(CLI::ExistingFile);
  app.add_option("--scenario", scenario, "scenario JSON file");
  app.add_option("--algo", algo, "algorithm")
      ->check(CLI::IsMember({"blll", "greedy", "kmeans_greedy",
                             "adapted_greedy", "oracle", "validate", "sweep"}));
  app.add_option("--seed", m.seed, "RNG seed");
  app.add_option("--iters", m.iters, "BLLL iterations")
      ->check(CLI::PositiveNumber);
  auto* t0_opt = app.add_option("--t0", t0, "initial temperature")
                     ->check(CLI::PositiveNumber);
  app.add_option("--cooling", cooling, "temperature schedule")
      ->check(CLI::IsMember({"logarithmic", "constant"}));
  app.add_option("--activation", activation, "BLLL activation rule")
      ->check(CLI::IsMember({"uniform_single", "coin_flip"}));
  auto* range_opt =
      app.add_option("--range-frac", range_frac,
                     "neighbourhood range as a fraction of the box diagonal")
          ->check(CLI::Range(0.0, 1.0));
  app.add_option("--trace-stride", m.trace_stride, "trace every n iterations")
      ->check(CLI::PositiveNumber);
  app.add_option("--configs", configs, "explicit configuration set (greedy)");
  app.add_option("--kmeans-rounds", m.kmeans.kmeans_rounds, "k-means rounds");
  app.add_flag("--permute", m.kmeans.permute,
               "try every center-to-UAV assignment");
  app.add_option("--max-configs", m.budget.max_configs, "oracle placement budget");
  app.add_option("--max-assoc-states", m.budget.max_assoc_states,
                 "oracle association budget");
  app.add_option("--ranges", m.sweep_ranges, "sweep range fractions")
      ->delimiter(',');
  app.add_option("--seeds", m.sweep_seeds, "sweep seeds")->delimiter(',');
  app.add_option("--out", out, "output directory");
  CLI11_PARSE(app, argc, argv);

  if (!manifest_path.empty()) {
    try {
      std::ifstream in(manifest_path);
      m = uavopt::ManifestFromJson(nlohmann::json::parse(in));
    } catch (const std::exception& e) {
      std::cerr << manifest_path << ": error: " << e.what() << "\n";
      return uavopt::kExitFailure;
    }
  } else {
    if (scenario.empty()) {
      std::cerr << "error: --scenario or --manifest is required\n";
      return uavopt::kExitFailure;
    }
    m.scenario_path = scenario;
    m.algorithm = *uavopt::ParseAlgorithm(algo);
    m.out_dir = out;
    m.cooling = cooling == "constant" ? uavopt::Cooling::kConstant
                                      : uavopt::Cooling::kLogarithmic;
    m.activation = activation == "coin_flip"
                       ? uavopt::Activation::kCoinFlip
                       : uavopt::Activation::kUniformSingle;
    if (t0_opt->count() > 0) m.t0 = t0;
    if (range_opt->count() > 0) m.range_frac = range_frac;
    if (!configs.empty()) m.configs_path = configs;
  }
  return uavopt::RunManifestToDisk(m, std::cerr);
}
