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

#ifndef UAVOPT_ORACLE_H_
#define UAVOPT_ORACLE_H_

#include <cstddef>
#include <vector>

#include "uavopt/model.h"
#include "uavopt/objective.h"

namespace uavopt {

// Limits on the exhaustive searches below.
struct OracleBudget {
  double max_configs = 1e6;
  double max_assoc_states = 1e7;

  void Validate() const;
};

struct AssociationOptimum {
  Association association;
  double value = 0.0;  // bit/s
  double states = 0.0;  // association states enumerated
};

// Exact best association for a fixed placement. Each user chooses
// "unassigned" or one of the UAVs where it meets the QoS floor; quotas prune
// the search. Among equal values the first in enumeration order wins
// (user 0 decides first; unassigned before UAV 0 before UAV 1 ...).
// Throws BudgetExceeded when the pruned state count exceeds the budget.
AssociationOptimum BestAssociation(const RateTable& table,
                                   const OracleBudget& budget = {});
AssociationOptimum BestAssociation(const Placement& placement,
                                   const Scenario& scenario,
                                   const OracleBudget& budget = {});

struct GlobalOptimum {
  Placement placement;
  Association association;
  double value = 0.0;
  std::size_t configs_evaluated = 0;
  std::vector<double> values;  // best association value per placement
};

// Exact optimum over every valid placement and feasible association.
// Placements are visited in odometer order and the first maximum is kept.
GlobalOptimum FindGlobalOptimum(const Scenario& scenario,
                                const OracleBudget& budget = {});

}  // namespace uavopt

#endif  // UAVOPT_ORACLE_H_
