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

#include <gtest/gtest.h>

#include <cmath>

#include "uavopt/errors.h"
#include "uavopt/oracle.h"
#include "uavopt/scenarios.h"

namespace uavopt {
namespace {

// Plain enumeration of every assignment vector in {none, 0..J-1}^I, with
// no pruning; infeasible vectors are skipped after the fact.
double BruteForceAssociationValue(const RateTable& table) {
  const Scenario& s = table.scenario();
  const std::size_t num_users = s.num_users();
  const std::size_t num_uavs = s.num_uavs();
  std::vector<std::size_t> choice(num_users, 0);
  double best = 0.0;
  while (true) {
    std::vector<int> load(num_uavs, 0);
    bool ok = true;
    double value = 0.0;
    for (std::size_t i = 0; i < num_users && ok; ++i) {
      if (choice[i] == 0) continue;
      const std::size_t j = choice[i] - 1;
      ok = table.MeetsQos(i, j) && ++load[j] <= s.uavs()[j].quota;
      value += table.Rate(i, j);
    }
    if (ok) best = std::max(best, value);
    std::size_t k = 0;
    while (k < num_users && ++choice[k] > num_uavs) choice[k++] = 0;
    if (k == num_users) return best;
  }
}

TEST(BestAssociationTest, MatchesBruteForceOnRandomDeskInstances) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const Scenario s = RandomDeskScenario(seed, 5, 3);
    Rng rng(seed);
    const Placement p = RandomPlacement(s, rng);
    const RateTable table(p, s);
    const AssociationOptimum opt = BestAssociation(table);
    const double expected = BruteForceAssociationValue(table);
    EXPECT_NEAR(opt.value, expected, 1e-9 * std::max(1.0, expected)) << seed;
    EXPECT_TRUE(IsFeasible(opt.association, p, s));
    EXPECT_NEAR(SumRate(opt.association, p, s), opt.value,
                1e-9 * std::max(1.0, opt.value));
  }
}

TEST(BestAssociationTest, NoFeasibleLinkGivesEmptyAssociation) {
  const Grid3D grid({0, 100, 100}, {0, 0, 1}, {100, 100, 1});
  const Scenario s({{0, 0}, {100, 0}}, {Uav{}}, grid, {}, QosFloor{30.0}, false, 1);
  const AssociationOptimum opt = BestAssociation(Placement{{0}}, s);
  EXPECT_EQ(opt.value, 0.0);
  EXPECT_EQ(opt.association.NumAssociated(), 0u);
}

TEST(BestAssociationTest, BudgetIsEnforced) {
  const Scenario s = BaselineScenario(1, 20, 3);
  OracleBudget budget;
  budget.max_assoc_states = 100;
  EXPECT_THROW(BestAssociation(Placement{{0, 5000, 9000}}, s, budget),
               BudgetExceeded);
}

TEST(GlobalOptimumTest, MatchesNestedBruteForce) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Scenario s = RandomDeskScenario(seed, 4, 2);
    double expected = 0.0;
    for (std::size_t a = 0; a < 8; ++a) {
      for (std::size_t b = 0; b < 8; ++b) {
        if (a == b) continue;
        expected = std::max(expected,
                            BruteForceAssociationValue(RateTable({{a, b}}, s)));
      }
    }
    const GlobalOptimum opt = FindGlobalOptimum(s);
    EXPECT_NEAR(opt.value, expected, 1e-9 * expected);
    EXPECT_EQ(opt.configs_evaluated, 56u);
    EXPECT_EQ(opt.values.size(), 56u);
    EXPECT_TRUE(IsFeasible(opt.association, opt.placement, s));
  }
}

TEST(GlobalOptimumTest, FirstMaximumWinsOnSymmetricInstance) {
  // One user at the center of a symmetric grid: every column is as good.
  const Grid3D grid({0, 200, 200}, {0, 200, 200}, {100, 100, 1});
  const Scenario s({{100, 100}}, {Uav{}}, grid, {}, {}, false, 1);
  const GlobalOptimum opt = FindGlobalOptimum(s);
  EXPECT_EQ(opt.placement.cells[0], 0u);
}

TEST(GlobalOptimumTest, PlacementBudgetIsEnforced) {
  const Scenario s = BaselineScenario(1, 5, 2);
  EXPECT_THROW(FindGlobalOptimum(s), BudgetExceeded);
}

TEST(OracleBudgetTest, RejectsNonPositiveBudgets) {
  OracleBudget budget;
  budget.max_configs = 0;
  EXPECT_THROW(budget.Validate(), InstanceError);
}

}  // namespace
}  // namespace uavopt
