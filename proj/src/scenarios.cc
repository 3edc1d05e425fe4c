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

#include "uavopt/scenarios.h"

#include "uavopt/rng.h"

namespace uavopt {
namespace {

constexpr std::uint64_t kUserStream = 7;
constexpr std::uint64_t kQuotaStream = 8;

Uav DefaultUav() { return Uav{10.0, 4, 1e6}; }

}  // namespace

std::vector<User> RandomUsers(const Grid3D& grid, std::size_t count,
                              std::uint64_t seed) {
  Rng rng(DeriveSeed(seed, kUserStream));
  const Axis& x = grid.x_axis();
  const Axis& y = grid.y_axis();
  std::vector<User> users;
  users.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double ux = x.min + rng.UniformReal() * (x.max - x.min);
    const double uy = y.min + rng.UniformReal() * (y.max - y.min);
    users.push_back({ux, uy});
  }
  return users;
}

Scenario BaselineScenario(std::uint64_t seed, std::size_t num_users,
                          std::size_t num_uavs) {
  const Grid3D grid({0, 1000, 10}, {0, 1000, 10}, {100, 200, 10});
  return Scenario(RandomUsers(grid, num_users, seed),
                  std::vector<Uav>(num_uavs, DefaultUav()), grid, ChannelParams{},
                  QosFloor{}, false, seed);
}

Scenario DeskScenario(std::uint64_t seed) {
  const Grid3D grid({0, 200, 200}, {0, 200, 200}, {100, 200, 100});
  Uav uav = DefaultUav();
  uav.quota = 2;
  return Scenario(RandomUsers(grid, 4, seed), std::vector<Uav>(2, uav), grid,
                  ChannelParams{}, QosFloor{}, false, seed);
}

Scenario RandomDeskScenario(std::uint64_t seed, std::size_t num_users,
                            std::size_t num_uavs) {
  const Grid3D grid({0, 200, 200}, {0, 200, 200}, {100, 200, 100});
  Rng rng(DeriveSeed(seed, kQuotaStream));
  std::vector<Uav> uavs(num_uavs, DefaultUav());
  for (Uav& u : uavs) u.quota = 1 + static_cast<int>(rng.UniformIndex(2));
  return Scenario(RandomUsers(grid, num_users, seed), uavs, grid,
                  ChannelParams{}, QosFloor{}, false, seed);
}

Scenario RangeStudyScenario(std::uint64_t seed) {
  const Grid3D grid({0, 1000, 50}, {0, 1000, 50}, {100, 200, 50});
  return Scenario(RandomUsers(grid, 60, seed), std::vector<Uav>(10, DefaultUav()),
                  grid, ChannelParams{}, QosFloor{}, false, seed);
}

}  // namespace uavopt
