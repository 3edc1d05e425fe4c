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

#include "uavopt/channel.h"

#include <cmath>
#include <numbers>

#include "uavopt/errors.h"

namespace uavopt {

LinkGeometry MakeGeometry(const Point3& uav, const User& user) {
  const double dx = uav.x - user.x;
  const double dy = uav.y - user.y;
  const double d = std::hypot(dx, dy);
  return {std::hypot(d, uav.h), d};
}

double ElevationDeg(const LinkGeometry& geom) {
  if (geom.r < geom.d) throw GeometryError("link range r is below ground range d");
  if (geom.r <= 0) throw GeometryError("link range must be positive");
  // atan(sqrt(r^2 - d^2) / d), well defined at d = 0.
  const double height = std::sqrt(geom.r * geom.r - geom.d * geom.d);
  return std::atan2(height, geom.d) * 180.0 / std::numbers::pi;
}

double LosProbability(const LinkGeometry& geom, const ChannelParams& params) {
  const double theta = ElevationDeg(geom);
  const double exponent =
      params.los_formula == LosFormula::kStandard
          ? -params.beta * (theta - params.epsilon)
          : -params.beta * theta - params.epsilon;
  return 1.0 / (1.0 + params.epsilon * std::exp(exponent));
}

double PathLossGain(const LinkGeometry& geom, const ChannelParams& params) {
  if (geom.r == 0) throw GeometryError("path loss is singular at r = 0");
  const double p = LosProbability(geom, params);
  const double free_space = std::pow(
      4.0 * std::numbers::pi * params.carrier_hz * geom.r / params.light_speed,
      -params.alpha);
  const double excess = DbToLinear(params.zeta_los_db) * p +
                        DbToLinear(params.zeta_nlos_db) * (1.0 - p);
  return free_space / excess;
}

double ReceivedPower(std::size_t user, std::size_t uav, const Point3& uav_pos,
                     const Scenario& scenario) {
  const double p = scenario.power_watts(uav);
  if (p == 0) return 0.0;
  return p * PathLossGain(MakeGeometry(uav_pos, scenario.users()[user]),
                          scenario.channel());
}

double Sinr(std::size_t user, std::size_t uav, const Placement& placement,
            const Scenario& scenario) {
  const Grid3D& grid = scenario.grid();
  double interference = scenario.noise_watts();
  for (std::size_t k = 0; k < scenario.num_uavs(); ++k) {
    if (k == uav) continue;
    interference +=
        ReceivedPower(user, k, grid.Point(placement.cells[k]), scenario);
  }
  return ReceivedPower(user, uav, grid.Point(placement.cells[uav]), scenario) /
         interference;
}

double Rate(std::size_t user, std::size_t uav, const Placement& placement,
            const Scenario& scenario) {
  return scenario.uavs()[uav].bandwidth_hz *
         SpectralEfficiency(Sinr(user, uav, placement, scenario));
}

}  // namespace uavopt
