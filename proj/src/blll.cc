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

#include "uavopt/blll.h"

#include <algorithm>
#include <cmath>

#include "uavopt/errors.h"

namespace uavopt {
namespace {

constexpr std::uint64_t kWarmupStream = 1;

// Uniform size in [0, min(quota, |pool|)], then a uniform subset of it.
std::vector<std::size_t> SampleUsers(std::vector<std::size_t> pool, int quota,
                                     Rng& rng) {
  const std::size_t cap =
      std::min(pool.size(), static_cast<std::size_t>(std::max(quota, 0)));
  const std::size_t size = rng.UniformIndex(cap + 1);
  for (std::size_t k = 0; k < size; ++k) {
    const std::size_t pick = k + rng.UniformIndex(pool.size() - k);
    std::swap(pool[k], pool[pick]);
  }
  pool.resize(size);
  std::sort(pool.begin(), pool.end());
  return pool;
}

double Utility(std::size_t uav, const Association& assoc,
               const RateTable& table, const BlllConfig& config) {
  return config.neighborhood_range_m
             ? MarginalUtilityRanged(uav, assoc, table,
                                     *config.neighborhood_range_m)
             : MarginalUtility(uav, assoc, table);
}

Association WithColumn(const Association& assoc, std::size_t uav,
                       const std::vector<std::size_t>& users) {
  Association out = assoc;
  out.ClearColumn(uav);
  for (std::size_t i : users) out.Set(i, uav, true);
  return out;
}

}  // namespace

void BlllConfig::Validate() const {
  if (t0 && !(*t0 > 0 && std::isfinite(*t0))) {
    throw InstanceError("t0 must be a positive finite temperature");
  }
  if (max_iters < 1) throw InstanceError("max_iters must be >= 1");
  if (trace_stride < 1) throw InstanceError("trace_stride must be >= 1");
  if (neighborhood_range_m && !(*neighborhood_range_m >= 0)) {
    throw InstanceError("neighbourhood range must be >= 0");
  }
}

BlllState MakeInitialState(const Scenario& scenario, const BlllConfig& config,
                           Rng& rng) {
  Placement start;
  if (config.initial_placement) {
    start = *config.initial_placement;
    if (!IsValidPlacement(start, scenario)) {
      throw InstanceError("initial placement is not a valid grid placement");
    }
  } else {
    start = RandomPlacement(scenario, rng);
  }
  BlllState state{RateTable(start, scenario),
                  Association(scenario.num_users(), scenario.num_uavs()),
                  std::vector<int>(scenario.num_users(), -1),
                  0.0,
                  0,
                  start,
                  Association(scenario.num_users(), scenario.num_uavs()),
                  0.0};
  return state;
}

Candidate Propose(std::size_t uav, const BlllState& state, Rng& rng) {
  const Scenario& scenario = state.table.scenario();
  const Placement& placement = state.placement();
  const std::size_t current = placement.cells[uav];

  std::vector<std::size_t> moves;
  for (std::size_t cell : scenario.grid().AxisNeighbors(current)) {
    const bool taken =
        !scenario.allow_collocation() &&
        std::find(placement.cells.begin(), placement.cells.end(), cell) !=
            placement.cells.end();
    if (!taken) moves.push_back(cell);
  }
  const std::size_t cell =
      moves.empty() ? current : moves[rng.UniformIndex(moves.size())];

  Candidate candidate{uav, cell, {}, state.table.WithMoved(uav, cell)};
  std::vector<std::size_t> pool;
  const int self = static_cast<int>(uav);
  for (std::size_t i = 0; i < scenario.num_users(); ++i) {
    if ((state.owner[i] == -1 || state.owner[i] == self) &&
        candidate.table.MeetsQos(i, uav)) {
      pool.push_back(i);
    }
  }
  candidate.users = SampleUsers(std::move(pool), scenario.uavs()[uav].quota, rng);
  return candidate;
}

double AcceptanceProbability(double u_current, double u_candidate,
                             double temperature) {
  if (!(temperature > 0)) {
    throw ContractError("temperature must be positive");
  }
  const double z = (u_candidate - u_current) / temperature;
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

bool Accept(double u_current, double u_candidate, double temperature,
            Rng& rng) {
  return rng.UniformReal() <
         AcceptanceProbability(u_current, u_candidate, temperature);
}

double Temperature(const BlllConfig& config, double t0, std::size_t t) {
  if (config.cooling == Cooling::kConstant) return t0;
  return t0 / std::log1p(static_cast<double>(std::max<std::size_t>(t, 1)));
}

double EstimateInitialTemperature(const Scenario& scenario, std::uint64_t seed,
                                  std::size_t samples) {
  Rng rng(DeriveSeed(seed, kWarmupStream));
  const std::size_t num_uavs = scenario.num_uavs();
  std::vector<double> values;
  values.reserve(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    const RateTable table(RandomPlacement(scenario, rng), scenario);
    Association assoc(scenario.num_users(), num_uavs);
    std::vector<bool> claimed(scenario.num_users(), false);
    for (std::size_t j = 0; j < num_uavs; ++j) {
      std::vector<std::size_t> pool;
      for (std::size_t i = 0; i < scenario.num_users(); ++i) {
        if (!claimed[i] && table.MeetsQos(i, j)) pool.push_back(i);
      }
      for (std::size_t i : SampleUsers(pool, scenario.uavs()[j].quota, rng)) {
        assoc.Set(i, j, true);
        claimed[i] = true;
      }
    }
    values.push_back(
        MarginalUtility(rng.UniformIndex(num_uavs), assoc, table));
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  const double sd = std::sqrt(var / static_cast<double>(values.size()));
  return sd > 0 && std::isfinite(sd) ? sd : 1.0;
}

BlllResult RunBlll(const Scenario& scenario, const BlllConfig& config) {
  config.Validate();
  Rng rng(config.seed);
  BlllResult result;
  result.t0 = config.t0 ? *config.t0
                        : EstimateInitialTemperature(scenario, config.seed);
  BlllState state = MakeInitialState(scenario, config, rng);
  const std::size_t num_uavs = scenario.num_uavs();

  auto step = [&](std::size_t uav, double temperature) {
    Candidate candidate = Propose(uav, state, rng);
    Association trial = WithColumn(state.association, uav, candidate.users);
    const double u_current = Utility(uav, state.association, state.table, config);
    const double u_candidate = Utility(uav, trial, candidate.table, config);
    if (!Accept(u_current, u_candidate, temperature, rng)) return false;
    for (std::size_t i : state.association.ServedUsers(uav)) state.owner[i] = -1;
    for (std::size_t i : candidate.users) state.owner[i] = static_cast<int>(uav);
    state.association = std::move(trial);
    state.table = std::move(candidate.table);
    state.sum_rate = SumRate(state.association, state.table);
    return true;
  };

  for (std::size_t t = 1; t <= config.max_iters; ++t) {
    const double temperature = Temperature(config, result.t0, t);
    std::optional<std::size_t> mover;
    bool accepted = false;
    if (config.activation == Activation::kUniformSingle) {
      mover = rng.UniformIndex(num_uavs);
      accepted = step(*mover, temperature);
    } else {
      for (std::size_t j = 0; j < num_uavs; ++j) {
        if (rng.Bernoulli(0.5)) {
          mover = j;
          accepted = step(j, temperature) || accepted;
        }
      }
    }
    state.iteration = t;
    if (accepted) ++result.accepted;
    if (state.sum_rate > state.best_sum_rate) {
      state.best_sum_rate = state.sum_rate;
      state.best_placement = state.placement();
      state.best_association = DropQosViolations(state.association, state.table);
    }
    if (t % config.trace_stride == 0 || t == config.max_iters) {
      result.trace.push_back({t, temperature, mover, accepted, state.sum_rate,
                              state.best_sum_rate});
    }
  }

  result.iterations = state.iteration;
  result.final_placement = state.placement();
  result.final_association = DropQosViolations(state.association, state.table);
  result.final_sum_rate = state.sum_rate;
  result.best_placement = state.best_placement;
  result.best_association = state.best_association;
  result.best_sum_rate = state.best_sum_rate;
  for (std::size_t j = 0; j < num_uavs; ++j) {
    result.final_utilities.push_back(
        Utility(j, state.association, state.table, config));
  }
  return result;
}

}  // namespace uavopt
