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

#include "uavopt/objective.h"

#include <cmath>
#include <string>

#include "uavopt/channel.h"
#include "uavopt/errors.h"

namespace uavopt {

RateTable::RateTable(const Placement& placement, const Scenario& scenario)
    : scenario_(&scenario),
      placement_(placement),
      num_uavs_(scenario.num_uavs()),
      gain_(scenario.num_users() * scenario.num_uavs()) {
  CheckPlacementShape(placement, scenario);
  for (std::size_t j = 0; j < num_uavs_; ++j) {
    if (placement.cells[j] >= scenario.grid().size()) {
      throw InstanceError("placement cell " +
                          std::to_string(placement.cells[j]) +
                          " is off the grid");
    }
    FillColumn(j);
  }
}

RateTable::RateTable(const Scenario& scenario, const Placement& placement,
                     std::vector<double> gains)
    : scenario_(&scenario),
      placement_(placement),
      num_uavs_(scenario.num_uavs()),
      gain_(std::move(gains)) {}

RateTable RateTable::FromGains(const Placement& placement,
                               const Scenario& scenario,
                               std::vector<double> gains) {
  CheckPlacementShape(placement, scenario);
  if (gains.size() != scenario.num_users() * scenario.num_uavs()) {
    throw InstanceError("gain table has the wrong size");
  }
  return RateTable(scenario, placement, std::move(gains));
}

void RateTable::FillColumn(std::size_t uav) {
  const Point3 pos = scenario_->grid().Point(placement_.cells[uav]);
  for (std::size_t i = 0; i < scenario_->num_users(); ++i) {
    gain_[i * num_uavs_ + uav] = ReceivedPower(i, uav, pos, *scenario_);
  }
}

RateTable RateTable::WithMoved(std::size_t uav, std::size_t cell) const {
  RateTable moved = *this;
  if (moved.placement_.cells[uav] != cell) {
    moved.placement_.cells[uav] = cell;
    moved.FillColumn(uav);
  }
  return moved;
}

double RateTable::Sinr(std::size_t user, std::size_t uav) const {
  const double* row = &gain_[user * num_uavs_];
  double interference = scenario_->noise_watts();
  for (std::size_t k = 0; k < num_uavs_; ++k) {
    if (k != uav) interference += row[k];
  }
  return row[uav] / interference;
}

double RateTable::SpectralEfficiency(std::size_t user, std::size_t uav) const {
  return uavopt::SpectralEfficiency(Sinr(user, uav));
}

double RateTable::Rate(std::size_t user, std::size_t uav) const {
  return scenario_->uavs()[uav].bandwidth_hz * SpectralEfficiency(user, uav);
}

bool RateTable::MeetsQos(std::size_t user, std::size_t uav) const {
  return SpectralEfficiency(user, uav) >= scenario_->eta_min();
}

double RateTable::SinrExcluding(std::size_t user, std::size_t serving,
                                std::size_t excluded,
                                const std::vector<bool>* interferers) const {
  const double* row = &gain_[user * num_uavs_];
  double interference = scenario_->noise_watts();
  for (std::size_t k = 0; k < num_uavs_; ++k) {
    if (k == serving || k == excluded) continue;
    if (interferers != nullptr && !(*interferers)[k]) continue;
    interference += row[k];
  }
  return row[serving] / interference;
}

double RateTable::RateExcluding(std::size_t user, std::size_t serving,
                                std::size_t excluded,
                                const std::vector<bool>* interferers) const {
  return scenario_->uavs()[serving].bandwidth_hz *
         uavopt::SpectralEfficiency(
             SinrExcluding(user, serving, excluded, interferers));
}

double SumRate(const Association& assoc, const Placement& placement,
               const Scenario& scenario, Evaluation mode) {
  if (mode == Evaluation::kChecked) {
    if (auto violated = FindViolation(assoc, placement, scenario)) {
      throw ConstraintViolation(*violated, "sum-rate of an infeasible state");
    }
  } else if (assoc.num_users() != scenario.num_users() ||
             assoc.num_uavs() != scenario.num_uavs()) {
    throw InstanceError("association dimensions do not match the scenario");
  }
  return SumRate(assoc, RateTable(placement, scenario));
}

double SumRate(const Association& assoc, const RateTable& table) {
  double total = 0.0;
  for (std::size_t j = 0; j < assoc.num_uavs(); ++j) {
    for (std::size_t i = 0; i < assoc.num_users(); ++i) {
      if (!assoc.Get(i, j)) continue;
      const double eta = table.SpectralEfficiency(i, j);
      if (eta >= table.scenario().eta_min()) {
        total += table.scenario().uavs()[j].bandwidth_hz * eta;
      }
    }
  }
  return total;
}

Association DropQosViolations(const Association& assoc,
                              const RateTable& table) {
  Association out = assoc;
  for (std::size_t i = 0; i < assoc.num_users(); ++i) {
    for (std::size_t j = 0; j < assoc.num_uavs(); ++j) {
      if (assoc.Get(i, j) && !table.MeetsQos(i, j)) out.Set(i, j, false);
    }
  }
  return out;
}

namespace {

// Shared body of the full and the ranged utility. With `neighbors` null
// every UAV takes part, which reproduces SumRate's summation order exactly.
double UtilityOverNeighbors(std::size_t uav, const Association& assoc,
                            const RateTable& table,
                            const std::vector<bool>* neighbors) {
  const Scenario& scenario = table.scenario();
  const double eta_min = scenario.eta_min();
  double with_uav = 0.0;
  double without_uav = 0.0;
  for (std::size_t k = 0; k < assoc.num_uavs(); ++k) {
    if (neighbors != nullptr && !(*neighbors)[k]) continue;
    const double bandwidth = scenario.uavs()[k].bandwidth_hz;
    for (std::size_t i = 0; i < assoc.num_users(); ++i) {
      if (!assoc.Get(i, k)) continue;
      const double eta = table.SpectralEfficiency(i, k);
      if (eta >= eta_min) with_uav += bandwidth * eta;
      if (k == uav) continue;
      const double eta_without =
          SpectralEfficiency(table.SinrExcluding(i, k, uav, neighbors));
      if (eta_without >= eta_min) without_uav += bandwidth * eta_without;
    }
  }
  return with_uav - without_uav;
}

}  // namespace

double MarginalUtility(std::size_t uav, const Association& assoc,
                       const RateTable& table) {
  return UtilityOverNeighbors(uav, assoc, table, nullptr);
}

double MarginalUtility(std::size_t uav, const Association& assoc,
                       const Placement& placement, const Scenario& scenario) {
  if (uav >= scenario.num_uavs()) throw InstanceError("UAV index out of range");
  return MarginalUtility(uav, assoc, RateTable(placement, scenario));
}

std::vector<bool> NeighborMask(std::size_t uav, const Placement& placement,
                               const Scenario& scenario, double range_m) {
  const Grid3D& grid = scenario.grid();
  const Point3 self = grid.Point(placement.cells[uav]);
  std::vector<bool> mask(scenario.num_uavs(), false);
  for (std::size_t k = 0; k < scenario.num_uavs(); ++k) {
    const Point3 other = grid.Point(placement.cells[k]);
    const double dist = std::sqrt((self.x - other.x) * (self.x - other.x) +
                                  (self.y - other.y) * (self.y - other.y) +
                                  (self.h - other.h) * (self.h - other.h));
    mask[k] = k == uav || dist <= range_m;
  }
  return mask;
}

double MarginalUtilityRanged(std::size_t uav, const Association& assoc,
                             const RateTable& table, double range_m) {
  if (range_m < 0) throw ContractError("neighbourhood range must be >= 0");
  const std::vector<bool> mask =
      NeighborMask(uav, table.placement(), table.scenario(), range_m);
  bool all = true;
  for (bool m : mask) all = all && m;
  return UtilityOverNeighbors(uav, assoc, table, all ? nullptr : &mask);
}

double PotentialIdentityResidual(std::size_t uav, const JointAction& a,
                                 const JointAction& a_prime,
                                 const Scenario& scenario) {
  CheckPlacementShape(a.placement, scenario);
  CheckPlacementShape(a_prime.placement, scenario);
  const std::size_t num_users = scenario.num_users();
  const std::size_t num_uavs = scenario.num_uavs();
  for (const Association* q : {&a.association, &a_prime.association}) {
    if (q->num_users() != num_users || q->num_uavs() != num_uavs) {
      throw InstanceError("association dimensions do not match the scenario");
    }
  }
  for (std::size_t k = 0; k < num_uavs; ++k) {
    if (k == uav) continue;
    bool same = a.placement.cells[k] == a_prime.placement.cells[k];
    for (std::size_t i = 0; same && i < num_users; ++i) {
      same = a.association.Get(i, k) == a_prime.association.Get(i, k);
    }
    if (!same) {
      throw ContractError("deviation is not unilateral: UAV " +
                          std::to_string(k) + " also changed");
    }
  }
  const RateTable table_a(a.placement, scenario);
  const RateTable table_b(a_prime.placement, scenario);
  const double delta_potential =
      SumRate(a.association, table_a) - SumRate(a_prime.association, table_b);
  const double delta_utility = MarginalUtility(uav, a.association, table_a) -
                               MarginalUtility(uav, a_prime.association, table_b);
  return std::abs(delta_potential - delta_utility);
}

}  // namespace uavopt
