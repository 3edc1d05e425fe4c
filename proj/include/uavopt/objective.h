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

#ifndef UAVOPT_OBJECTIVE_H_
#define UAVOPT_OBJECTIVE_H_

#include <cstddef>
#include <vector>

#include "uavopt/model.h"

namespace uavopt {

// Received powers P_k L_ik (watts) for one placement. Rates are derived on
// demand; interference sums always run in UAV index order so that every
// route to the same quantity is bit-identical.
class RateTable {
 public:
  RateTable(const Placement& placement, const Scenario& scenario);

  // Table over precomputed received powers, user-major I x J.
  static RateTable FromGains(const Placement& placement,
                             const Scenario& scenario,
                             std::vector<double> gains);

  // Copy with UAV `uav` moved to `cell`; only that column is recomputed.
  RateTable WithMoved(std::size_t uav, std::size_t cell) const;

  const Scenario& scenario() const { return *scenario_; }
  const Placement& placement() const { return placement_; }

  double Gain(std::size_t user, std::size_t uav) const {
    return gain_[user * num_uavs_ + uav];
  }
  double Sinr(std::size_t user, std::size_t uav) const;
  double SpectralEfficiency(std::size_t user, std::size_t uav) const;
  double Rate(std::size_t user, std::size_t uav) const;
  bool MeetsQos(std::size_t user, std::size_t uav) const;

  // SINR of user on `serving` with `excluded` silenced. When `interferers`
  // is non-null only UAVs flagged there contribute interference.
  double SinrExcluding(std::size_t user, std::size_t serving,
                       std::size_t excluded,
                       const std::vector<bool>* interferers = nullptr) const;
  double RateExcluding(std::size_t user, std::size_t serving,
                       std::size_t excluded,
                       const std::vector<bool>* interferers = nullptr) const;

 private:
  RateTable(const Scenario& scenario, const Placement& placement,
            std::vector<double> gains);
  void FillColumn(std::size_t uav);

  const Scenario* scenario_;
  Placement placement_;
  std::size_t num_uavs_;
  std::vector<double> gain_;
};

enum class Evaluation {
  kChecked,            // infeasible input raises ConstraintViolation
  kDropQosViolations,  // links under the QoS floor contribute nothing
};

// Network sum-rate sum_j sum_i q_ij R_ij in bit/s.
double SumRate(const Association& assoc, const Placement& placement,
               const Scenario& scenario, Evaluation mode = Evaluation::kChecked);

// Sum-rate with links below the QoS floor dropped.
double SumRate(const Association& assoc, const RateTable& table);

// `assoc` without the links that fail the QoS floor under `table`.
Association DropQosViolations(const Association& assoc, const RateTable& table);

// Marginal-contribution utility of `uav`: network sum-rate minus the
// sum-rate of the other UAVs' users with `uav` (and its users) removed.
double MarginalUtility(std::size_t uav, const Association& assoc,
                       const RateTable& table);
double MarginalUtility(std::size_t uav, const Association& assoc,
                       const Placement& placement, const Scenario& scenario);

// UAVs within 3D distance range_m of `uav`; `uav` itself is always set.
std::vector<bool> NeighborMask(std::size_t uav, const Placement& placement,
                               const Scenario& scenario, double range_m);

// Marginal utility computed from the neighbour set only. Rates in the
// first sum keep full-network interference; the removed-UAV rates see
// interference from neighbours only.
double MarginalUtilityRanged(std::size_t uav, const Association& assoc,
                             const RateTable& table, double range_m);

// Joint action of the whole fleet.
struct JointAction {
  Placement placement;
  Association association;
};

// |[F(a) - F(a')] - [U_j(a) - U_j(a')]| with F the sum-rate. Throws
// ContractError unless a and a' differ only in UAV j's cell and column.
double PotentialIdentityResidual(std::size_t uav, const JointAction& a,
                                 const JointAction& a_prime,
                                 const Scenario& scenario);

}  // namespace uavopt

#endif  // UAVOPT_OBJECTIVE_H_
