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

#ifndef UAVOPT_CHANNEL_H_
#define UAVOPT_CHANNEL_H_

#include <cmath>
#include <cstddef>

#include "uavopt/model.h"

namespace uavopt {

// UAV-to-user distances: r is the 3D range, d its ground projection.
struct LinkGeometry {
  double r = 0.0;
  double d = 0.0;
};

LinkGeometry MakeGeometry(const Point3& uav, const User& user);

inline double DbToLinear(double db) { return std::pow(10.0, db / 10.0); }
inline double DbmToWatts(double dbm) { return 1e-3 * DbToLinear(dbm); }

// Elevation angle of the UAV seen from the user, in degrees. 90 when d = 0.
double ElevationDeg(const LinkGeometry& geom);

// Probability that the link is line-of-sight. Throws GeometryError when
// r < d or r <= 0.
double LosProbability(const LinkGeometry& geom, const ChannelParams& params);

// Linear gain factor L (<= 1 in practice): free-space term times the inverse
// of the LoS/NLoS-averaged excess loss, both excess losses in linear scale.
// Throws GeometryError when r == 0.
double PathLossGain(const LinkGeometry& geom, const ChannelParams& params);

// Power received by `user` from `uav` in watts (P_j * L_ij).
double ReceivedPower(std::size_t user, std::size_t uav, const Point3& uav_pos,
                     const Scenario& scenario);

// SINR at `user` from `uav`; every other UAV interferes.
double Sinr(std::size_t user, std::size_t uav, const Placement& placement,
            const Scenario& scenario);

// log2(1 + sinr), bit/s/Hz.
inline double SpectralEfficiency(double sinr) { return std::log2(1.0 + sinr); }

// b_j * eta_ij, bit/s.
double Rate(std::size_t user, std::size_t uav, const Placement& placement,
            const Scenario& scenario);

}  // namespace uavopt

#endif  // UAVOPT_CHANNEL_H_
