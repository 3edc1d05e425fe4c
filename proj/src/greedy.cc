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

#include "uavopt/greedy.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "uavopt/channel.h"
#include "uavopt/errors.h"
#include "uavopt/parallel.h"

namespace uavopt {
namespace {

// Distinct (uav, cell) gain columns cached by GreedyOverConfigs.
constexpr std::size_t kMaxCachedColumns = 200000;
// Largest enumeration KmeansConfigurations will materialize.
constexpr double kMaxKmeansConfigs = 5e7;
// Hard cap on the exhaustive subset table of the submodularity check.
constexpr std::size_t kMaxGroundSetBits = 20;

struct RatedPair {
  double rate;
  std::size_t user;
  std::size_t uav;
};

// Highest rate first; ties by lower user id, then lower UAV id.
bool RankBefore(const RatedPair& a, const RatedPair& b) {
  if (a.rate != b.rate) return a.rate > b.rate;
  if (a.user != b.user) return a.user < b.user;
  return a.uav < b.uav;
}

}  // namespace

double ExhaustiveConfigurationCount(const Scenario& scenario) {
  const double cells = static_cast<double>(scenario.grid().size());
  double count = 1.0;
  for (std::size_t j = 0; j < scenario.num_uavs(); ++j) {
    count *= scenario.allow_collocation() ? cells
                                          : cells - static_cast<double>(j);
  }
  return count;
}

ConfigurationSet ExhaustiveConfigurations(const Scenario& scenario,
                                          std::size_t max_configs) {
  const double count = ExhaustiveConfigurationCount(scenario);
  if (count > static_cast<double>(max_configs)) {
    throw BudgetExceeded("exhaustive configuration set too large", count);
  }
  ConfigurationSet set;
  set.provenance = ConfigProvenance::kExhaustive;
  set.placements.reserve(static_cast<std::size_t>(count));
  ForEachPlacement(scenario,
                   [&](const Placement& p) { set.placements.push_back(p); });
  return set;
}

ConfigGreedy GreedyPerConfig(const RateTable& table) {
  const Scenario& scenario = table.scenario();
  const std::size_t num_users = scenario.num_users();
  const std::size_t num_uavs = scenario.num_uavs();

  std::vector<RatedPair> pairs;
  pairs.reserve(num_users * num_uavs);
  std::vector<bool> qos(num_users * num_uavs);
  for (std::size_t i = 0; i < num_users; ++i) {
    for (std::size_t j = 0; j < num_uavs; ++j) {
      const double eta = table.SpectralEfficiency(i, j);
      qos[i * num_uavs + j] = eta >= scenario.eta_min();
      pairs.push_back({scenario.uavs()[j].bandwidth_hz * eta, i, j});
    }
  }
  std::sort(pairs.begin(), pairs.end(), RankBefore);

  ConfigGreedy out{Association(num_users, num_uavs), 0.0, 0};
  std::vector<bool> user_done(num_users, false);
  std::vector<int> room(num_uavs);
  std::size_t open_uavs = 0;
  for (std::size_t j = 0; j < num_uavs; ++j) {
    room[j] = scenario.uavs()[j].quota;
    if (room[j] > 0) ++open_uavs;
  }
  std::size_t free_users = num_users;
  for (const RatedPair& p : pairs) {
    if (free_users == 0 || open_uavs == 0) break;
    ++out.iterations;
    if (user_done[p.user] || room[p.uav] <= 0 ||
        !qos[p.user * num_uavs + p.uav]) {
      continue;
    }
    out.association.Set(p.user, p.uav, true);
    out.value += p.rate;
    user_done[p.user] = true;
    --free_users;
    if (--room[p.uav] == 0) --open_uavs;
  }
  return out;
}

ConfigGreedy GreedyPerConfig(const Placement& placement,
                             const Scenario& scenario) {
  return GreedyPerConfig(RateTable(placement, scenario));
}

GreedyResult GreedyOverConfigs(const ConfigurationSet& configs,
                               const Scenario& scenario, int workers) {
  if (configs.placements.empty()) {
    throw ContractError("configuration set is empty");
  }
  for (const Placement& p : configs.placements) {
    if (!IsValidPlacement(p, scenario)) {
      throw InstanceError("configuration is not a valid grid placement");
    }
  }
  const std::size_t num_users = scenario.num_users();
  const std::size_t num_uavs = scenario.num_uavs();
  const std::size_t count = configs.placements.size();

  // Gain columns shared across configurations, keyed by (uav, cell).
  std::unordered_map<std::uint64_t, std::size_t> column_of;
  std::vector<std::size_t> column_index;
  const std::uint64_t grid_size = scenario.grid().size();
  bool cached = true;
  column_index.reserve(count * num_uavs);
  for (const Placement& p : configs.placements) {
    for (std::size_t j = 0; j < num_uavs && cached; ++j) {
      const std::uint64_t key = j * grid_size + p.cells[j];
      auto [it, inserted] = column_of.try_emplace(key, column_of.size());
      column_index.push_back(it->second);
      cached = column_of.size() <= kMaxCachedColumns;
    }
    if (!cached) break;
  }
  std::vector<std::vector<double>> columns;
  if (cached) {
    columns.resize(column_of.size());
    for (const auto& [key, idx] : column_of) {
      const std::size_t uav = key / grid_size;
      const Point3 pos = scenario.grid().Point(key % grid_size);
      columns[idx].resize(num_users);
      for (std::size_t i = 0; i < num_users; ++i) {
        columns[idx][i] = ReceivedPower(i, uav, pos, scenario);
      }
    }
  }
  auto table_for = [&](std::size_t k) {
    const Placement& p = configs.placements[k];
    if (!cached) return RateTable(p, scenario);
    std::vector<double> gains(num_users * num_uavs);
    for (std::size_t j = 0; j < num_uavs; ++j) {
      const std::vector<double>& col = columns[column_index[k * num_uavs + j]];
      for (std::size_t i = 0; i < num_users; ++i) {
        gains[i * num_uavs + j] = col[i];
      }
    }
    return RateTable::FromGains(p, scenario, std::move(gains));
  };

  GreedyResult result;
  result.values.assign(count, 0.0);
  std::vector<std::size_t> steps(count, 0);
  ParallelFor(count, workers > 0 ? workers : WorkerCount(),
              [&](std::size_t begin, std::size_t end) {
                for (std::size_t k = begin; k < end; ++k) {
                  const ConfigGreedy g = GreedyPerConfig(table_for(k));
                  result.values[k] = g.value;
                  steps[k] = g.iterations;
                }
              });
  for (std::size_t k = 0; k < count; ++k) {
    result.iterations += steps[k];
    if (k == 0 || result.values[k] > result.best_value) {
      result.best_value = result.values[k];
      result.best_index = k;
    }
  }
  result.best_placement = configs.placements[result.best_index];
  result.best_association =
      GreedyPerConfig(table_for(result.best_index)).association;
  return result;
}

std::vector<Point2> Kmeans2d(const Scenario& scenario, std::size_t n_rounds,
                             const Placement& initial) {
  if (n_rounds < 1) throw ContractError("k-means needs at least one round");
  if (!IsValidPlacement(initial, scenario)) {
    throw InstanceError("k-means initial placement is not on the grid");
  }
  const std::size_t num_users = scenario.num_users();
  const std::size_t num_uavs = scenario.num_uavs();
  const Grid3D& grid = scenario.grid();
  std::vector<Point3> pos;
  for (std::size_t c : initial.cells) pos.push_back(grid.Point(c));

  std::vector<std::size_t> cluster(num_users, num_uavs);
  std::vector<double> gains(num_uavs);
  for (std::size_t round = 0; round < n_rounds; ++round) {
    bool changed = false;
    for (std::size_t i = 0; i < num_users; ++i) {
      double total = scenario.noise_watts();
      for (std::size_t j = 0; j < num_uavs; ++j) {
        gains[j] = ReceivedPower(i, j, pos[j], scenario);
        total += gains[j];
      }
      std::size_t best = 0;
      double best_sinr = -1.0;
      for (std::size_t j = 0; j < num_uavs; ++j) {
        const double sinr = gains[j] / (total - gains[j]);
        if (sinr > best_sinr) {
          best_sinr = sinr;
          best = j;
        }
      }
      changed = changed || cluster[i] != best;
      cluster[i] = best;
    }
    if (!changed) break;
    for (std::size_t j = 0; j < num_uavs; ++j) {
      double sx = 0.0, sy = 0.0;
      std::size_t n = 0;
      for (std::size_t i = 0; i < num_users; ++i) {
        if (cluster[i] != j) continue;
        sx += scenario.users()[i].x;
        sy += scenario.users()[i].y;
        ++n;
      }
      if (n > 0) {
        pos[j].x = sx / static_cast<double>(n);
        pos[j].y = sy / static_cast<double>(n);
      }
    }
  }
  std::vector<Point2> centers;
  for (const Point3& p : pos) {
    const Point3 snapped = grid.Point(grid.NearestXY(p.x, p.y, 0));
    centers.push_back({snapped.x, snapped.y});
  }
  return centers;
}

ConfigurationSet KmeansConfigurations(const Scenario& scenario,
                                      const std::vector<Point2>& centers,
                                      bool permute) {
  const std::size_t num_uavs = scenario.num_uavs();
  if (centers.size() != num_uavs) {
    throw ContractError("need exactly one center per UAV");
  }
  const Grid3D& grid = scenario.grid();
  const std::size_t nh = grid.nh();
  double count = std::pow(static_cast<double>(nh), static_cast<double>(num_uavs));
  if (permute) {
    for (std::size_t j = 2; j <= num_uavs; ++j) count *= static_cast<double>(j);
  }
  if (count > kMaxKmeansConfigs) {
    throw BudgetExceeded("k-means configuration set too large", count);
  }
  std::vector<std::size_t> column_cell;  // cell at height index 0
  for (const Point2& c : centers) column_cell.push_back(grid.NearestXY(c.x, c.y, 0));

  ConfigurationSet set;
  set.provenance = ConfigProvenance::kKmeansReduced;
  std::vector<std::size_t> mapping(num_uavs);
  std::iota(mapping.begin(), mapping.end(), 0);
  do {
    std::vector<std::size_t> heights(num_uavs, 0);
    while (true) {
      Placement p;
      p.cells.reserve(num_uavs);
      for (std::size_t j = 0; j < num_uavs; ++j) {
        p.cells.push_back(column_cell[mapping[j]] + heights[j]);
      }
      if (IsValidPlacement(p, scenario)) set.placements.push_back(std::move(p));
      std::size_t k = num_uavs;
      bool done = true;
      while (k > 0) {
        --k;
        if (++heights[k] < nh) {
          done = false;
          break;
        }
        heights[k] = 0;
      }
      if (done) break;
    }
  } while (permute && std::next_permutation(mapping.begin(), mapping.end()));
  if (set.placements.empty()) {
    throw InstanceError("k-means produced no collocation-free configuration");
  }
  return set;
}

KmeansGreedyResult CombinedKmeansGreedy(const Scenario& scenario, Rng& rng,
                                        const KmeansGreedyOptions& options) {
  KmeansGreedyResult out;
  out.initial = RandomPlacement(scenario, rng);
  out.centers = Kmeans2d(scenario, options.kmeans_rounds, out.initial);
  const ConfigurationSet configs =
      KmeansConfigurations(scenario, out.centers, options.permute);
  out.num_configs = configs.size();
  out.greedy = GreedyOverConfigs(configs, scenario, options.workers);
  return out;
}

AdaptedGreedyResult AdaptedGreedy(const Scenario& scenario, int workers) {
  const std::size_t num_users = scenario.num_users();
  const std::size_t num_uavs = scenario.num_uavs();
  const Grid3D& grid = scenario.grid();
  const std::size_t grid_size = grid.size();
  const double eta_min = scenario.eta_min();
  if (workers <= 0) workers = WorkerCount();

  AdaptedGreedyResult out;
  out.order.resize(num_uavs);
  std::iota(out.order.begin(), out.order.end(), 0);
  std::stable_sort(out.order.begin(), out.order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return scenario.uavs()[a].quota > scenario.uavs()[b].quota;
                   });

  std::vector<double> interference(num_users, scenario.noise_watts());
  std::vector<bool> free_user(num_users, true);
  std::vector<bool> taken(grid_size, false);
  out.placement.cells.assign(num_uavs, 0);
  Association assoc(num_users, num_uavs);

  // Rated candidates of `uav` at `cell`, best first, QoS-satisfying only.
  auto rate_cell = [&](std::size_t uav, std::size_t cell,
                       std::vector<RatedPair>& scratch) {
    scratch.clear();
    const Point3 pos = grid.Point(cell);
    const double bandwidth = scenario.uavs()[uav].bandwidth_hz;
    for (std::size_t i = 0; i < num_users; ++i) {
      if (!free_user[i]) continue;
      const double eta = SpectralEfficiency(
          ReceivedPower(i, uav, pos, scenario) / interference[i]);
      if (eta >= eta_min) scratch.push_back({bandwidth * eta, i, uav});
    }
  };

  for (std::size_t step = 0; step < num_uavs; ++step) {
    const std::size_t uav = out.order[step];
    const auto quota =
        static_cast<std::size_t>(std::max(scenario.uavs()[uav].quota, 0));

    // Per-chunk winners, reduced in chunk order so ties keep the lowest cell.
    const int threads = static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(workers), grid_size));
    const std::size_t chunk = (grid_size + threads - 1) / threads;
    std::vector<std::pair<double, std::size_t>> winners(
        threads, {-1.0, grid_size});
    ParallelFor(static_cast<std::size_t>(threads), threads,
                [&](std::size_t tb, std::size_t te) {
                  std::vector<RatedPair> scratch;
                  for (std::size_t t = tb; t < te; ++t) {
                    const std::size_t begin = t * chunk;
                    const std::size_t end = std::min(grid_size, begin + chunk);
                    auto& [best_value, best_cell] = winners[t];
                    for (std::size_t cell = begin; cell < end; ++cell) {
                      if (taken[cell]) continue;
                      rate_cell(uav, cell, scratch);
                      const std::size_t n = std::min(quota, scratch.size());
                      std::partial_sort(scratch.begin(), scratch.begin() + n,
                                        scratch.end(), RankBefore);
                      double value = 0.0;
                      for (std::size_t k = 0; k < n; ++k) value += scratch[k].rate;
                      if (value > best_value) {
                        best_value = value;
                        best_cell = cell;
                      }
                    }
                  }
                });
    std::pair<double, std::size_t> best{-1.0, grid_size};
    for (const auto& w : winners) {
      if (w.first > best.first) best = w;
    }
    const std::size_t cell = best.second;
    if (cell == grid_size) throw InstanceError("no free grid cell left");

    std::vector<RatedPair> chosen;
    rate_cell(uav, cell, chosen);
    const std::size_t n = std::min(quota, chosen.size());
    std::partial_sort(chosen.begin(), chosen.begin() + n, chosen.end(),
                      RankBefore);
    for (std::size_t k = 0; k < n; ++k) {
      assoc.Set(chosen[k].user, uav, true);
      free_user[chosen[k].user] = false;
    }
    out.placement.cells[uav] = cell;
    if (!scenario.allow_collocation()) taken[cell] = true;
    const Point3 pos = grid.Point(cell);
    for (std::size_t i = 0; i < num_users; ++i) {
      interference[i] += ReceivedPower(i, uav, pos, scenario);
    }
    out.sequential_value += best.first;
    out.trace.push_back({step + 1, std::nullopt, std::nullopt, std::nullopt,
                         out.sequential_value, out.sequential_value});
    ++out.iterations;
  }

  const RateTable table(out.placement, scenario);
  out.association = DropQosViolations(assoc, table);
  out.sum_rate = SumRate(out.association, table);
  return out;
}

// --- Set-function property checks -----------------------------------------

std::vector<GroundSetElement> FeasibleGroundSet(const RateTable& table,
                                                std::size_t config) {
  const Scenario& scenario = table.scenario();
  std::vector<GroundSetElement> out;
  for (std::size_t i = 0; i < scenario.num_users(); ++i) {
    for (std::size_t j = 0; j < scenario.num_uavs(); ++j) {
      if (table.MeetsQos(i, j)) out.push_back({i, j, config});
    }
  }
  return out;
}

double EvaluateSetFunction(const std::vector<GroundSetElement>& set,
                           const RateTable& table, SetFunctionMode mode) {
  const Scenario& scenario = table.scenario();
  const std::size_t num_uavs = scenario.num_uavs();
  std::vector<bool> active(num_uavs, false);
  for (const GroundSetElement& e : set) active[e.uav] = true;

  // (eta, rate) per UAV.
  std::vector<std::vector<std::pair<double, double>>> per_uav(num_uavs);
  for (const GroundSetElement& e : set) {
    const double sinr = mode == SetFunctionMode::kFixedInterference
                            ? table.Sinr(e.user, e.uav)
                            : table.SinrExcluding(e.user, e.uav, e.uav, &active);
    const double eta = SpectralEfficiency(sinr);
    per_uav[e.uav].push_back({eta, scenario.uavs()[e.uav].bandwidth_hz * eta});
  }
  double total = 0.0;
  for (std::size_t j = 0; j < num_uavs; ++j) {
    auto& v = per_uav[j];
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
      return a.first > b.first;
    });
    const std::size_t keep = std::min(
        v.size(), static_cast<std::size_t>(std::max(scenario.uavs()[j].quota, 0)));
    for (std::size_t k = 0; k < keep; ++k) total += v[k].second;
  }
  return total;
}

SubmodularityReport CheckSubmodularMonotone(const Placement& placement,
                                            const Scenario& scenario,
                                            std::size_t exhaustive_limit,
                                            SetFunctionMode mode) {
  const RateTable table(placement, scenario);
  const std::vector<GroundSetElement> ground = FeasibleGroundSet(table);
  const std::size_t n = ground.size();
  if (n > exhaustive_limit || n > kMaxGroundSetBits) {
    throw BudgetExceeded("ground set has " + std::to_string(n) +
                             " elements, limit is " +
                             std::to_string(std::min(exhaustive_limit,
                                                     kMaxGroundSetBits)),
                         static_cast<double>(n));
  }
  SubmodularityReport report;
  report.ground_set_size = n;

  const std::uint32_t full = (1u << n);
  auto members = [&](std::uint32_t mask) {
    std::vector<GroundSetElement> out;
    for (std::size_t b = 0; b < n; ++b) {
      if (mask & (1u << b)) out.push_back(ground[b]);
    }
    return out;
  };
  std::vector<double> f(full);
  double scale = 1.0;
  for (std::uint32_t mask = 0; mask < full; ++mask) {
    f[mask] = EvaluateSetFunction(members(mask), table, mode);
    scale = std::max(scale, std::abs(f[mask]));
  }
  const double tol = 1e-9 * scale;

  for (std::uint32_t b = 0; b < full; ++b) {
    for (std::uint32_t a = b;; a = (a - 1) & b) {
      ++report.pairs_checked;
      if (f[a] > f[b] + tol) {
        ++report.monotonicity_violations;
        if (!report.witness) {
          report.witness = {"monotonicity", members(a), members(b),
                            std::nullopt, f[a], f[b]};
        }
      }
      for (std::size_t e = 0; e < n; ++e) {
        const std::uint32_t bit = 1u << e;
        if (b & bit) continue;
        const double gain_a = f[a | bit] - f[a];
        const double gain_b = f[b | bit] - f[b];
        if (gain_a < gain_b - tol) {
          ++report.submodularity_violations;
          if (!report.witness) {
            report.witness = {"submodularity", members(a), members(b),
                              ground[e], gain_a, gain_b};
          }
        }
      }
      if (a == 0) break;
    }
  }
  return report;
}

std::size_t ConfigurationCap(const Scenario& scenario) {
  std::size_t seats = 0;
  for (const Uav& u : scenario.uavs()) {
    seats += static_cast<std::size_t>(std::max(u.quota, 0));
  }
  return std::min(scenario.num_users(), seats);
}

bool IsIndependent(const std::vector<GroundSetElement>& set, std::size_t cap) {
  if (set.empty()) return true;
  if (set.size() > cap) return false;
  for (std::size_t a = 0; a < set.size(); ++a) {
    if (set[a].config != set[0].config) return false;
    for (std::size_t b = a + 1; b < set.size(); ++b) {
      if (set[a] == set[b]) return false;
    }
  }
  return true;
}

MatroidReport CheckPartitionMatroid(const ConfigurationSet& configs,
                                    const Scenario& scenario,
                                    std::size_t sample, Rng& rng) {
  if (configs.placements.empty()) {
    throw ContractError("configuration set is empty");
  }
  const std::size_t num_users = scenario.num_users();
  const std::size_t num_uavs = scenario.num_uavs();
  const std::size_t block = num_users * num_uavs;
  const std::size_t cap = ConfigurationCap(scenario);

  MatroidReport report;
  report.empty_set_independent = IsIndependent({}, cap);

  std::vector<std::size_t> indices(block);
  auto draw = [&](std::size_t k) {
    const std::size_t size = rng.UniformIndex(std::min(cap, block) + 1);
    std::iota(indices.begin(), indices.end(), 0);
    std::vector<GroundSetElement> set;
    for (std::size_t t = 0; t < size; ++t) {
      std::swap(indices[t], indices[t + rng.UniformIndex(block - t)]);
      set.push_back({indices[t] / num_uavs, indices[t] % num_uavs, k});
    }
    return set;
  };
  // Exists e in big \ small with small + e independent.
  auto augmentable = [&](const std::vector<GroundSetElement>& big,
                         const std::vector<GroundSetElement>& small) {
    for (const GroundSetElement& e : big) {
      if (std::find(small.begin(), small.end(), e) != small.end()) continue;
      std::vector<GroundSetElement> grown = small;
      grown.push_back(e);
      if (IsIndependent(grown, cap)) return true;
    }
    return false;
  };

  std::vector<std::vector<GroundSetElement>> sets;
  for (std::size_t s = 0; s < sample; ++s) {
    sets.push_back(draw(rng.UniformIndex(configs.size())));
  }
  report.sets_sampled = sets.size();

  for (const auto& set : sets) {
    // Hereditary: every subset (all of them up to 12 elements, else a sample).
    const std::size_t n = set.size();
    const bool all = n <= 12;
    const std::size_t trials = all ? (std::size_t{1} << n) : 256;
    for (std::size_t t = 0; t < trials; ++t) {
      std::vector<GroundSetElement> subset;
      for (std::size_t e = 0; e < n; ++e) {
        const bool take = all ? ((t >> e) & 1) != 0 : rng.Bernoulli(0.5);
        if (take) subset.push_back(set[e]);
      }
      if (!IsIndependent(subset, cap)) ++report.hereditary_violations;
    }

    // Augmentation against a fresh set of the same configuration.
    if (!set.empty()) {
      std::vector<GroundSetElement> other = draw(set[0].config);
      const auto* big = &set;
      const auto* small = &other;
      if (big->size() < small->size()) std::swap(big, small);
      if (big->size() > small->size()) {
        ++report.augmentation_checks;
        if (!augmentable(*big, *small)) ++report.augmentation_violations;
      }
    }
  }

  // Consecutive samples usually come from different configurations.
  for (std::size_t s = 0; s + 1 < sets.size(); ++s) {
    const auto* big = &sets[s];
    const auto* small = &sets[s + 1];
    if (big->size() < small->size()) std::swap(big, small);
    if (big->size() == small->size() || small->empty()) continue;
    if ((*small)[0].config == (*big)[0].config) continue;
    if (!augmentable(*big, *small)) ++report.cross_config_augmentation_failures;
  }
  return report;
}

}  // namespace uavopt
