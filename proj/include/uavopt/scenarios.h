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

#ifndef UAVOPT_SCENARIOS_H_
#define UAVOPT_SCENARIOS_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "uavopt/model.h"

namespace uavopt {

// Users drawn uniformly over the grid's ground rectangle.
std::vector<User> RandomUsers(const Grid3D& grid, std::size_t count,
                              std::uint64_t seed);

// 1000 m x 1000 m area, 10 m steps, heights 100..200 m, P = 10 dBm,
// N_j = 4, eta_min = -3 dB, zeta = 1/20 dB, eps/beta = 9.61/0.16, 2 GHz.
Scenario BaselineScenario(std::uint64_t seed, std::size_t num_users = 45,
                          std::size_t num_uavs = 5);

// 4 users, 2 UAVs, 2x2x2 grid over a 200 m square, N_j = 2, default
// channel. Small enough for the exhaustive oracle.
Scenario DeskScenario(std::uint64_t seed);

// Random desk-scale instance with the given fleet and user counts on a
// 2x2x2 grid; quotas drawn from 1..2.
Scenario RandomDeskScenario(std::uint64_t seed, std::size_t num_users,
                            std::size_t num_uavs);

// 60 users and 10 UAVs over 1000 m x 1000 m with a 50 m grid and heights
// {100, 150, 200}; used for the neighbourhood-range study.
Scenario RangeStudyScenario(std::uint64_t seed);

}  // namespace uavopt

#endif  // UAVOPT_SCENARIOS_H_
