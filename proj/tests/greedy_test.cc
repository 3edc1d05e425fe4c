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
#include <set>

#include "uavopt/channel.h"
#include "uavopt/errors.h"
#include "uavopt/greedy.h"
#include "uavopt/oracle.h"
#include "uavopt/scenarios.h"

namespace uavopt {
namespace {

constexpr double kOneMinusInvE = 1.0 - 0.36787944117144233;

TEST(GreedyPerConfigTest, SingleUserPicksTheStrongerUav) {
  const Grid3D grid({0, 500, 500}, {0, 0, 1}, {100, 100, 1});
  const Scenario s({{450, 0}}, {Uav{}, Uav{}}, grid, {}, {}, false, 1);
  const ConfigGreedy g = GreedyPerConfig(Placement{{0, 1}}, s);
  EXPECT_TRUE(g.association.Get(0, 1));
  EXPECT_FALSE(g.association.Get(0, 0));
  EXPECT_EQ(g.value, Rate(0, 1, Placement{{0, 1}}, s));
}

TEST(GreedyPerConfigTest, NoFeasibleLinkGivesEmptyAssociation) {
  const Scenario base = DeskScenario(1);
  const Scenario s(base.users(), base.uavs(), base.grid(), base.channel(),
                   QosFloor{30.0}, false, 1);
  const ConfigGreedy g = GreedyPerConfig(Placement{{0, 7}}, s);
  EXPECT_EQ(g.value, 0.0);
  EXPECT_EQ(g.association.NumAssociated(), 0u);
}

TEST(GreedyPerConfigTest, FeasibleAndWithinIterationBound) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Scenario s = RandomDeskScenario(seed, 6, 3);
    Rng rng(seed);
    const Placement p = RandomPlacement(s, rng);
    const ConfigGreedy g = GreedyPerConfig(p, s);
    EXPECT_TRUE(IsFeasible(g.association, p, s));
    EXPECT_LE(g.iterations, 18u);
    EXPECT_NEAR(SumRate(g.association, p, s), g.value, 1e-9 * std::max(1.0, g.value));
  }
}

TEST(GreedyPerConfigTest, WithinBoundOfExactAssociationOnDeskInstances) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Scenario s = RandomDeskScenario(seed, 4, 2);
    ForEachPlacement(s, [&](const Placement& p) {
      const RateTable table(p, s);
      const double greedy = GreedyPerConfig(table).value;
      const double exact = BestAssociation(table).value;
      EXPECT_GE(greedy, kOneMinusInvE * exact) << seed;
      EXPECT_LE(greedy, exact * (1 + 1e-12));
    });
  }
}

TEST(GreedyOverConfigsTest, SingleConfigurationReducesToPerConfig) {
  const Scenario s = DeskScenario(2);
  const Placement p{{1, 6}};
  const GreedyResult r = GreedyOverConfigs({{p}, ConfigProvenance::kExplicit}, s);
  const ConfigGreedy g = GreedyPerConfig(p, s);
  EXPECT_EQ(r.best_value, g.value);
  EXPECT_EQ(r.best_association, g.association);
  EXPECT_EQ(r.iterations, g.iterations);
}

TEST(GreedyOverConfigsTest, DuplicatesKeepTheFirstIndex) {
  const Scenario s = DeskScenario(3);
  const Placement p{{1, 6}};
  const GreedyResult r =
      GreedyOverConfigs({{p, p}, ConfigProvenance::kExplicit}, s);
  EXPECT_EQ(r.best_index, 0u);
  EXPECT_EQ(r.values[0], r.values[1]);
}

TEST(GreedyOverConfigsTest, ExhaustiveMatchesBestGreedyConfiguration) {
  const Scenario s = RandomDeskScenario(4, 5, 3);
  const ConfigurationSet configs = ExhaustiveConfigurations(s, 1000);
  EXPECT_EQ(configs.size(), 336u);
  double best = -1.0;
  std::size_t best_index = 0;
  for (std::size_t k = 0; k < configs.size(); ++k) {
    const double v = GreedyPerConfig(configs.placements[k], s).value;
    if (v > best) {
      best = v;
      best_index = k;
    }
  }
  for (int workers : {1, 3}) {
    const GreedyResult r = GreedyOverConfigs(configs, s, workers);
    EXPECT_EQ(r.best_value, best);
    EXPECT_EQ(r.best_index, best_index);
    EXPECT_LE(r.iterations, configs.size() * 15);
  }
}

TEST(GreedyOverConfigsTest, EmptyOrInvalidSetsAreRejected) {
  const Scenario s = DeskScenario(5);
  EXPECT_THROW(GreedyOverConfigs({}, s), ContractError);
  EXPECT_THROW(GreedyOverConfigs({{Placement{{0, 0}}}, ConfigProvenance::kExplicit}, s),
               InstanceError);
}

TEST(ExhaustiveTest, CountsAndBudget) {
  const Scenario s = DeskScenario(6);
  EXPECT_EQ(ExhaustiveConfigurationCount(s), 56.0);
  EXPECT_THROW(ExhaustiveConfigurations(s, 10), BudgetExceeded);
  const Scenario shared(s.users(), s.uavs(), s.grid(), s.channel(), s.qos(),
                        true, 1);
  EXPECT_EQ(ExhaustiveConfigurationCount(shared), 64.0);
}

TEST(KmeansTest, SingleUserPointCollapsesCenters) {
  const Grid3D grid({0, 1000, 10}, {0, 1000, 10}, {100, 200, 100});
  const std::vector<User> users(6, User{300, 700});
  const Scenario s(users, std::vector<Uav>(2, Uav{}), grid, {}, {}, false, 1);
  const Placement initial{{grid.NearestXY(300, 650, 0), grid.NearestXY(320, 720, 1)}};
  const std::vector<Point2> centers = Kmeans2d(s, 20, initial);
  // The nearer UAV takes every user and moves onto them; the other keeps
  // its empty-cluster position.
  EXPECT_TRUE(centers[0] == (Point2{300, 700}) || centers[1] == (Point2{300, 700}));
}

TEST(KmeansTest, TwoSeparatedBlobsGetOneCenterEach) {
  const Grid3D grid({0, 1000, 10}, {0, 1000, 10}, {100, 100, 1});
  std::vector<User> users;
  for (int k = 0; k < 5; ++k) {
    users.push_back({100.0 + 4 * k, 100.0 + 2 * k});
    users.push_back({900.0 - 4 * k, 900.0 - 2 * k});
  }
  const Scenario s(users, std::vector<Uav>(2, Uav{}), grid, {}, {}, false, 1);
  const Placement initial{{grid.NearestXY(400, 400, 0), grid.NearestXY(600, 600, 0)}};
  const std::vector<Point2> centers = Kmeans2d(s, 50, initial);
  EXPECT_EQ(centers[0], (Point2{110, 100}));
  EXPECT_EQ(centers[1], (Point2{890, 900}));
}

TEST(KmeansTest, ConfigurationCountIsHeightsToTheJ) {
  const Scenario s = BaselineScenario(1);
  std::vector<Point2> centers;
  for (int j = 0; j < 5; ++j) centers.push_back({100.0 * j, 50.0});
  const ConfigurationSet configs = KmeansConfigurations(s, centers, false);
  EXPECT_EQ(configs.size(), 161051u);
  EXPECT_EQ(configs.provenance, ConfigProvenance::kKmeansReduced);
  const ConfigurationSet permuted =
      KmeansConfigurations(BaselineScenario(1, 45, 2), {centers[0], centers[1]}, true);
  EXPECT_EQ(permuted.size(), 2u * 121u);
}

TEST(KmeansTest, SingleHeightGivesOneConfiguration) {
  const Grid3D grid({0, 100, 10}, {0, 100, 10}, {120, 120, 1});
  const Scenario s({{10, 10}, {90, 90}}, std::vector<Uav>(2, Uav{}), grid, {}, {},
                   false, 1);
  const ConfigurationSet configs =
      KmeansConfigurations(s, {{10, 10}, {90, 90}}, false);
  ASSERT_EQ(configs.size(), 1u);
  EXPECT_EQ(configs.placements[0].cells[0], grid.NearestXY(10, 10, 0));
}

TEST(KmeansTest, CollocatedCentersWithOneHeightAreInfeasible) {
  const Grid3D grid({0, 100, 10}, {0, 100, 10}, {120, 120, 1});
  const Scenario s({{10, 10}}, std::vector<Uav>(2, Uav{}), grid, {}, {}, false, 1);
  EXPECT_THROW(KmeansConfigurations(s, {{10, 10}, {10, 10}}, false), InstanceError);
}

TEST(CombinedKmeansGreedyTest, DeskValueWithinBoundOfReducedOracle) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Scenario s = RandomDeskScenario(seed, 4, 2);
    Rng rng(seed);
    const KmeansGreedyResult r = CombinedKmeansGreedy(s, rng);
    double reduced_opt = 0.0;
    // Rebuild the reduced set from the reported centers.
    const ConfigurationSet configs = KmeansConfigurations(s, r.centers, false);
    EXPECT_EQ(configs.size(), r.num_configs);
    for (const Placement& p : configs.placements) {
      reduced_opt = std::max(reduced_opt, BestAssociation(p, s).value);
    }
    EXPECT_GE(r.greedy.best_value, kOneMinusInvE * reduced_opt);
    EXPECT_LE(r.greedy.best_value, reduced_opt * (1 + 1e-12));
  }
}

TEST(AdaptedGreedyTest, DeskInvariants) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Scenario s = RandomDeskScenario(seed, 5, 3);
    const AdaptedGreedyResult r = AdaptedGreedy(s);
    EXPECT_EQ(r.iterations, 3u);
    EXPECT_EQ(r.trace.size(), 3u);
    EXPECT_TRUE(IsFeasible(r.association, r.placement, s));
    EXPECT_NEAR(SumRate(r.association, r.placement, s), r.sum_rate,
                1e-9 * std::max(1.0, r.sum_rate));
    for (std::size_t k = 1; k < r.order.size(); ++k) {
      EXPECT_GE(s.uavs()[r.order[k - 1]].quota, s.uavs()[r.order[k]].quota);
    }
    for (std::size_t k = 1; k < r.trace.size(); ++k) {
      EXPECT_GE(r.trace[k].sum_rate_bps, r.trace[k - 1].sum_rate_bps);
    }
    EXPECT_EQ(r.trace.back().sum_rate_bps, r.sequential_value);
  }
}

TEST(AdaptedGreedyTest, FirstUavHoversOverItsUsers) {
  const Grid3D grid({0, 1000, 100}, {0, 1000, 100}, {100, 200, 100});
  const Scenario s({{300, 300}, {700, 800}}, {Uav{10.0, 1, 1e6}}, grid, {}, {},
                   false, 1);
  const AdaptedGreedyResult r = AdaptedGreedy(s);
  const Point3 p = grid.Point(r.placement.cells[0]);
  EXPECT_EQ(p.h, 100.0);
  EXPECT_TRUE((p.x == 300 && p.y == 300) || (p.x == 700 && p.y == 800));
}

TEST(SetFunctionTest, EmptySetIsZeroAndSingletonIsItsRate) {
  const Scenario s = DeskScenario(7);
  const RateTable table({{1, 6}}, s);
  const auto ground = FeasibleGroundSet(table);
  ASSERT_FALSE(ground.empty());
  EXPECT_EQ(EvaluateSetFunction({}, table), 0.0);
  const GroundSetElement e = ground.front();
  EXPECT_EQ(EvaluateSetFunction({e}, table), table.Rate(e.user, e.uav));
}

TEST(SubmodularityTest, DeskConfigurationsPass) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Scenario s = RandomDeskScenario(seed, 4, 2);
    ForEachPlacement(s, [&](const Placement& p) {
      const SubmodularityReport r = CheckSubmodularMonotone(p, s);
      EXPECT_TRUE(r.ok());
      EXPECT_GT(r.pairs_checked, 0u);
    });
  }
}

TEST(SubmodularityTest, ActiveInterferenceControlIsCaught) {
  std::size_t violations = 0;
  for (std::uint64_t seed = 1; seed <= 5 && violations == 0; ++seed) {
    const Scenario s = RandomDeskScenario(seed, 4, 2);
    ForEachPlacement(s, [&](const Placement& p) {
      const SubmodularityReport r = CheckSubmodularMonotone(
          p, s, 12, SetFunctionMode::kActiveInterferenceOnly);
      violations += r.monotonicity_violations + r.submodularity_violations;
      if (!r.ok()) EXPECT_TRUE(r.witness.has_value());
    });
  }
  EXPECT_GT(violations, 0u);
}

TEST(SubmodularityTest, LargeGroundSetIsRefused) {
  const Scenario s = BaselineScenario(1, 20, 2);
  EXPECT_THROW(CheckSubmodularMonotone(Placement{{5000, 5010}}, s),
               BudgetExceeded);
}

TEST(MatroidTest, IndependenceRules) {
  const std::vector<GroundSetElement> same = {{0, 0, 0}, {1, 1, 0}};
  EXPECT_TRUE(IsIndependent({}, 2));
  EXPECT_TRUE(IsIndependent(same, 2));
  EXPECT_FALSE(IsIndependent(same, 1));
  EXPECT_FALSE(IsIndependent({{0, 0, 0}, {1, 1, 1}}, 2));
  EXPECT_FALSE(IsIndependent({{0, 0, 0}, {0, 0, 0}}, 2));
}

TEST(MatroidTest, DeskConfigurationsSatisfyTheAxioms) {
  const Scenario s = RandomDeskScenario(3, 4, 2);
  const ConfigurationSet configs = ExhaustiveConfigurations(s, 1000);
  Rng rng(1);
  const MatroidReport r = CheckPartitionMatroid(configs, s, 200, rng);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.sets_sampled, 200u);
  EXPECT_GT(r.augmentation_checks, 0u);
  EXPECT_EQ(ConfigurationCap(s), std::min<std::size_t>(
                                     4, s.uavs()[0].quota + s.uavs()[1].quota));
}

}  // namespace
}  // namespace uavopt
