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

#include "uavopt/channel.h"
#include "uavopt/errors.h"
#include "uavopt/objective.h"
#include "uavopt/scenarios.h"

namespace uavopt {
namespace {

Scenario ThreeUavScenario(std::uint64_t seed) {
  const Grid3D grid({0, 400, 100}, {0, 400, 100}, {100, 200, 50});
  Uav uav;
  uav.quota = 3;
  return Scenario(RandomUsers(grid, 8, seed), std::vector<Uav>(3, uav), grid,
                  ChannelParams{}, QosFloor{}, false, seed);
}

// Every user on its best QoS-feasible UAV until quotas run out.
Association SomeFeasibleAssociation(const RateTable& table) {
  const Scenario& s = table.scenario();
  Association q(s.num_users(), s.num_uavs());
  for (std::size_t i = 0; i < s.num_users(); ++i) {
    for (std::size_t j = 0; j < s.num_uavs(); ++j) {
      if (table.MeetsQos(i, j) &&
          q.ColumnSum(j) < static_cast<std::size_t>(s.uavs()[j].quota)) {
        q.Set(i, j, true);
        break;
      }
    }
  }
  return q;
}

TEST(RateTableTest, MatchesChannelFunctions) {
  const Scenario s = ThreeUavScenario(1);
  const Placement p{{0, 17, 40}};
  const RateTable table(p, s);
  for (std::size_t i = 0; i < s.num_users(); ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      EXPECT_EQ(table.Sinr(i, j), Sinr(i, j, p, s));
      EXPECT_EQ(table.Rate(i, j), Rate(i, j, p, s));
    }
  }
}

TEST(RateTableTest, MovedCopyIsBitIdenticalToFreshTable) {
  const Scenario s = ThreeUavScenario(2);
  const RateTable moved = RateTable({{0, 17, 40}}, s).WithMoved(1, 33);
  const RateTable fresh({{0, 33, 40}}, s);
  for (std::size_t i = 0; i < s.num_users(); ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      EXPECT_EQ(moved.Gain(i, j), fresh.Gain(i, j));
      EXPECT_EQ(moved.Sinr(i, j), fresh.Sinr(i, j));
    }
  }
}

TEST(SumRateTest, EmptyAssociationIsZero) {
  const Scenario s = ThreeUavScenario(3);
  EXPECT_EQ(SumRate(Association(8, 3), Placement{{0, 1, 2}}, s), 0.0);
}

TEST(SumRateTest, SingleLinkEqualsItsRate) {
  const Grid3D grid({0, 100, 100}, {0, 100, 100}, {100, 100, 1});
  const Scenario s({{30, 40}}, {Uav{}}, grid, {}, {}, false, 1);
  Association q(1, 1);
  q.Set(0, 0, true);
  EXPECT_EQ(SumRate(q, Placement{{0}}, s), Rate(0, 0, Placement{{0}}, s));
}

TEST(SumRateTest, DeskInstanceMatchesDirectSummation) {
  const Scenario s = DeskScenario(4);
  const Placement p{{1, 6}};
  const RateTable table(p, s);
  const Association q = SomeFeasibleAssociation(table);
  double expected = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      if (q.Get(i, j)) expected += Rate(i, j, p, s);
    }
  }
  EXPECT_NEAR(SumRate(q, p, s), expected, 1e-9 * expected);
}

TEST(SumRateTest, CheckedModeNamesTheConstraint) {
  const Scenario s = ThreeUavScenario(4);
  const Placement p{{0, 17, 40}};
  Association over(8, 3);
  for (std::size_t i = 0; i < 4; ++i) over.Set(i, 0, true);
  try {
    SumRate(over, p, s);
    FAIL() << "quota violation accepted";
  } catch (const ConstraintViolation& e) {
    EXPECT_EQ(e.constraint(), "uav quota");
  }
}

TEST(SumRateTest, QosFailingLinksRaiseOrDrop) {
  const Grid3D grid({0, 1000, 1000}, {0, 0, 1}, {100, 100, 1});
  // User far from UAV 0 and under UAV 1: the link to UAV 0 fails the floor.
  const Scenario s({{1000, 0}}, {Uav{}, Uav{}}, grid, {}, {}, false, 1);
  const Placement p{{0, 1}};
  const RateTable table(p, s);
  ASSERT_FALSE(table.MeetsQos(0, 0));
  Association q(1, 2);
  q.Set(0, 0, true);
  try {
    SumRate(q, p, s);
    FAIL() << "QoS violation accepted";
  } catch (const ConstraintViolation& e) {
    EXPECT_EQ(e.constraint(), "qos floor");
  }
  EXPECT_EQ(SumRate(q, p, s, Evaluation::kDropQosViolations), 0.0);
  EXPECT_EQ(DropQosViolations(q, table).NumAssociated(), 0u);
}

TEST(MarginalUtilityTest, SingleUavUtilityIsTheSumRate) {
  const Grid3D grid({0, 100, 100}, {0, 100, 100}, {100, 100, 1});
  const Scenario s({{10, 10}, {90, 90}}, {Uav{}}, grid, {}, {}, false, 1);
  Association q(2, 1);
  q.Set(0, 0, true);
  q.Set(1, 0, true);
  const Placement p{{0}};
  EXPECT_EQ(MarginalUtility(0, q, p, s), SumRate(q, p, s));
}

TEST(MarginalUtilityTest, SilentIdleUavHasZeroUtility) {
  const Grid3D grid({0, 100, 100}, {0, 100, 100}, {100, 100, 1});
  Uav silent;
  silent.power_dbm = -INFINITY;
  const Scenario s({{10, 10}, {90, 90}}, {Uav{}, silent}, grid, {}, {}, false, 1);
  const Placement p{{0, 3}};
  Association q(2, 2);
  q.Set(0, 0, true);
  q.Set(1, 0, true);
  EXPECT_EQ(MarginalUtility(1, q, p, s), 0.0);
}

TEST(PotentialTest, IdenticalActionsHaveZeroResidual) {
  const Scenario s = ThreeUavScenario(5);
  const Placement p{{0, 17, 40}};
  const JointAction a{p, SomeFeasibleAssociation(RateTable(p, s))};
  EXPECT_EQ(PotentialIdentityResidual(1, a, a, s), 0.0);
}

TEST(PotentialTest, RandomUnilateralMovesSatisfyTheIdentity) {
  Rng rng(11);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Scenario s = ThreeUavScenario(seed);
    for (int trial = 0; trial < 40; ++trial) {
      const Placement p = RandomPlacement(s, rng);
      JointAction a{p, SomeFeasibleAssociation(RateTable(p, s))};
      const std::size_t j = rng.UniformIndex(3);
      JointAction b = a;
      do {
        b.placement.cells[j] = rng.UniformIndex(s.grid().size());
      } while (!IsValidPlacement(b.placement, s));
      b.association.ClearColumn(j);
      for (std::size_t i = 0; i < s.num_users(); ++i) {
        if (b.association.RowSum(i) == 0 && rng.Bernoulli(0.3) &&
            b.association.ColumnSum(j) < 3) {
          b.association.Set(i, j, true);
        }
      }
      const double scale = std::max(
          1.0, SumRate(a.association, a.placement, s,
                       Evaluation::kDropQosViolations));
      EXPECT_LE(PotentialIdentityResidual(j, a, b, s) / scale, 1e-9);
    }
  }
}

TEST(PotentialTest, TwoMoversViolateTheContract) {
  const Scenario s = ThreeUavScenario(6);
  const JointAction a{Placement{{0, 17, 40}}, Association(8, 3)};
  JointAction b = a;
  b.placement.cells[0] = 1;
  b.placement.cells[2] = 41;
  EXPECT_THROW(PotentialIdentityResidual(0, a, b, s), ContractError);
}

TEST(RangedUtilityTest, FullRangeIsExactlyTheUnrangedUtility) {
  const Scenario s = ThreeUavScenario(7);
  const Placement p{{0, 17, 40}};
  const RateTable table(p, s);
  const Association q = SomeFeasibleAssociation(table);
  for (std::size_t j = 0; j < 3; ++j) {
    EXPECT_EQ(MarginalUtilityRanged(j, q, table, s.grid().Diagonal()),
              MarginalUtility(j, q, table));
  }
}

TEST(RangedUtilityTest, ZeroRangeIsOwnServedRate) {
  const Scenario s = ThreeUavScenario(8);
  const Placement p{{0, 17, 40}};
  const RateTable table(p, s);
  const Association q = SomeFeasibleAssociation(table);
  for (std::size_t j = 0; j < 3; ++j) {
    double own = 0.0;
    for (std::size_t i = 0; i < s.num_users(); ++i) {
      if (q.Get(i, j) && table.MeetsQos(i, j)) own += table.Rate(i, j);
    }
    EXPECT_NEAR(MarginalUtilityRanged(j, q, table, 0.0), own, 1e-9 * own);
  }
}

TEST(RangedUtilityTest, NegativeRangeIsRejected) {
  const Scenario s = ThreeUavScenario(9);
  const RateTable table({{0, 17, 40}}, s);
  EXPECT_THROW(MarginalUtilityRanged(0, Association(8, 3), table, -1.0),
               ContractError);
}

TEST(RangedUtilityTest, NeighborMaskUsesThreeDimensionalDistance) {
  const Scenario s = ThreeUavScenario(10);
  const Grid3D& g = s.grid();
  const Placement p{{g.Index(0, 0, 0), g.Index(1, 0, 2), g.Index(4, 4, 0)}};
  // UAV 1 sits 100 m across and 100 m up: sqrt(2) * 100 m away.
  EXPECT_EQ(NeighborMask(0, p, s, 141.0), (std::vector<bool>{true, false, false}));
  EXPECT_EQ(NeighborMask(0, p, s, 142.0), (std::vector<bool>{true, true, false}));
}

}  // namespace
}  // namespace uavopt
