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

#include "uavopt/model.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "uavopt/channel.h"
#include "uavopt/errors.h"

namespace uavopt {
namespace {

// Slack absorbing representation error when counting axis points.
constexpr double kAxisSlack = 1e-9;

void RequireFinite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw InstanceError(std::string(name) + " must be finite");
  }
}

}  // namespace

void ChannelParams::Validate() const {
  RequireFinite(epsilon, "epsilon");
  RequireFinite(beta, "beta");
  RequireFinite(alpha, "alpha");
  RequireFinite(zeta_los_db, "zeta_los_db");
  RequireFinite(zeta_nlos_db, "zeta_nlos_db");
  RequireFinite(carrier_hz, "carrier_hz");
  RequireFinite(light_speed, "light_speed");
  RequireFinite(noise_dbm, "noise_dbm");
  if (epsilon <= 0) throw InstanceError("epsilon must be > 0");
  if (beta <= 0) throw InstanceError("beta must be > 0");
  if (alpha < 2) throw InstanceError("alpha must be >= 2");
  if (zeta_nlos_db < zeta_los_db) {
    throw InstanceError("zeta_nlos_db must be >= zeta_los_db");
  }
  if (carrier_hz <= 0) throw InstanceError("carrier_hz must be > 0");
  if (light_speed <= 0) throw InstanceError("light_speed must be > 0");
}

std::size_t Axis::Count() const {
  return static_cast<std::size_t>(std::floor((max - min) / step + kAxisSlack)) +
         1;
}

double Axis::At(std::size_t k) const {
  return std::min(max, min + static_cast<double>(k) * step);
}

Grid3D::Grid3D(Axis x, Axis y, Axis h) : x_(x), y_(y), h_(h) {
  for (const Axis* a : {&x_, &y_, &h_}) {
    RequireFinite(a->min, "grid min");
    RequireFinite(a->max, "grid max");
    RequireFinite(a->step, "grid step");
    if (a->max < a->min) throw InstanceError("grid axis has max < min");
    if (a->step <= 0) throw InstanceError("grid step must be > 0");
  }
  nx_ = x_.Count();
  ny_ = y_.Count();
  nh_ = h_.Count();
}

std::array<std::size_t, 3> Grid3D::Coordinates(std::size_t index) const {
  const std::size_t ih = index % nh_;
  const std::size_t rest = index / nh_;
  return {rest / ny_, rest % ny_, ih};
}

Point3 Grid3D::Point(std::size_t index) const {
  const auto [ix, iy, ih] = Coordinates(index);
  return {x_.At(ix), y_.At(iy), h_.At(ih)};
}

std::vector<Point3> Grid3D::Enumerate() const {
  std::vector<Point3> points;
  points.reserve(size());
  for (std::size_t ix = 0; ix < nx_; ++ix) {
    for (std::size_t iy = 0; iy < ny_; ++iy) {
      for (std::size_t ih = 0; ih < nh_; ++ih) {
        points.push_back({x_.At(ix), y_.At(iy), h_.At(ih)});
      }
    }
  }
  return points;
}

std::vector<std::size_t> Grid3D::AxisNeighbors(std::size_t index) const {
  const auto [ix, iy, ih] = Coordinates(index);
  std::vector<std::size_t> out;
  out.reserve(6);
  if (ix > 0) out.push_back(Index(ix - 1, iy, ih));
  if (ix + 1 < nx_) out.push_back(Index(ix + 1, iy, ih));
  if (iy > 0) out.push_back(Index(ix, iy - 1, ih));
  if (iy + 1 < ny_) out.push_back(Index(ix, iy + 1, ih));
  if (ih > 0) out.push_back(Index(ix, iy, ih - 1));
  if (ih + 1 < nh_) out.push_back(Index(ix, iy, ih + 1));
  return out;
}

namespace {

std::optional<std::size_t> LocateOnAxis(const Axis& a, std::size_t n,
                                        double v, double tol) {
  const double k = std::round((v - a.min) / a.step);
  if (k < 0 || k >= static_cast<double>(n)) return std::nullopt;
  const auto ik = static_cast<std::size_t>(k);
  if (std::abs(a.At(ik) - v) > tol) return std::nullopt;
  return ik;
}

std::size_t NearestOnAxis(const Axis& a, std::size_t n, double v) {
  const double k = std::round((v - a.min) / a.step);
  if (k <= 0) return 0;
  return std::min(n - 1, static_cast<std::size_t>(k));
}

}  // namespace

std::optional<std::size_t> Grid3D::Locate(const Point3& p, double tol) const {
  const auto ix = LocateOnAxis(x_, nx_, p.x, tol);
  const auto iy = LocateOnAxis(y_, ny_, p.y, tol);
  const auto ih = LocateOnAxis(h_, nh_, p.h, tol);
  if (!ix || !iy || !ih) return std::nullopt;
  return Index(*ix, *iy, *ih);
}

std::size_t Grid3D::NearestXY(double x, double y, std::size_t ih) const {
  return Index(NearestOnAxis(x_, nx_, x), NearestOnAxis(y_, ny_, y), ih);
}

double Grid3D::Diagonal() const {
  return std::sqrt((x_.max - x_.min) * (x_.max - x_.min) +
                   (y_.max - y_.min) * (y_.max - y_.min) +
                   (h_.max - h_.min) * (h_.max - h_.min));
}

bool Grid3D::ContainsXY(double x, double y) const {
  return x >= x_.min && x <= x_.max && y >= y_.min && y <= y_.max;
}

void Association::ClearColumn(std::size_t uav) {
  for (std::size_t i = 0; i < users_; ++i) Set(i, uav, false);
}

std::size_t Association::RowSum(std::size_t user) const {
  std::size_t s = 0;
  for (std::size_t j = 0; j < uavs_; ++j) s += Get(user, j) ? 1 : 0;
  return s;
}

std::size_t Association::ColumnSum(std::size_t uav) const {
  std::size_t s = 0;
  for (std::size_t i = 0; i < users_; ++i) s += Get(i, uav) ? 1 : 0;
  return s;
}

std::size_t Association::NumAssociated() const {
  return static_cast<std::size_t>(
      std::count_if(q_.begin(), q_.end(), [](std::uint8_t v) { return v; }));
}

std::optional<std::size_t> Association::ServingUav(std::size_t user) const {
  for (std::size_t j = 0; j < uavs_; ++j) {
    if (Get(user, j)) return j;
  }
  return std::nullopt;
}

std::vector<std::size_t> Association::ServedUsers(std::size_t uav) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < users_; ++i) {
    if (Get(i, uav)) out.push_back(i);
  }
  return out;
}

double QosFloor::EtaMin() const {
  const double linear = DbToLinear(db);
  return mode == QosThreshold::kSpectralEfficiency ? linear
                                                   : std::log2(1.0 + linear);
}

Scenario::Scenario(std::vector<User> users, std::vector<Uav> uavs, Grid3D grid,
                   ChannelParams channel, QosFloor qos, bool allow_collocation,
                   std::uint64_t rng_seed)
    : users_(std::move(users)),
      uavs_(std::move(uavs)),
      grid_(grid),
      channel_(channel),
      qos_(qos),
      allow_collocation_(allow_collocation),
      rng_seed_(rng_seed) {
  channel_.Validate();
  if (users_.empty()) throw InstanceError("scenario needs at least one user");
  if (uavs_.empty()) throw InstanceError("scenario needs at least one UAV");
  for (std::size_t i = 0; i < users_.size(); ++i) {
    RequireFinite(users_[i].x, "user x");
    RequireFinite(users_[i].y, "user y");
    if (!grid_.ContainsXY(users_[i].x, users_[i].y)) {
      std::ostringstream os;
      os << "user " << i << " at (" << users_[i].x << ", " << users_[i].y
         << ") lies outside the scenario area";
      throw InstanceError(os.str());
    }
  }
  for (std::size_t j = 0; j < uavs_.size(); ++j) {
    if (uavs_[j].quota < 0) throw InstanceError("UAV quota must be >= 0");
    if (!(uavs_[j].bandwidth_hz > 0) || !std::isfinite(uavs_[j].bandwidth_hz)) {
      throw InstanceError("UAV bandwidth must be > 0");
    }
    if (std::isnan(uavs_[j].power_dbm) || uavs_[j].power_dbm == INFINITY) {
      throw InstanceError("UAV power must be finite or -inf");
    }
  }
  if (!allow_collocation_ && uavs_.size() > grid_.size()) {
    throw InstanceError("more UAVs than grid points with collocation forbidden");
  }
  eta_min_ = qos_.EtaMin();
  if (!(eta_min_ > 0) || !std::isfinite(eta_min_)) {
    throw InstanceError("eta_min must be > 0");
  }
  noise_watts_ = DbmToWatts(channel_.noise_dbm);
  power_watts_.reserve(uavs_.size());
  for (const Uav& u : uavs_) power_watts_.push_back(DbmToWatts(u.power_dbm));
}

void CheckPlacementShape(const Placement& placement, const Scenario& scenario) {
  if (placement.size() != scenario.num_uavs()) {
    throw InstanceError("placement has " + std::to_string(placement.size()) +
                        " cells for " + std::to_string(scenario.num_uavs()) +
                        " UAVs");
  }
}

bool IsValidPlacement(const Placement& placement, const Scenario& scenario) {
  CheckPlacementShape(placement, scenario);
  const std::size_t grid_size = scenario.grid().size();
  for (std::size_t c : placement.cells) {
    if (c >= grid_size) return false;
  }
  if (!scenario.allow_collocation()) {
    std::vector<std::size_t> sorted = placement.cells;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      return false;
    }
  }
  return true;
}

Placement RandomPlacement(const Scenario& scenario, Rng& rng) {
  const std::size_t grid_size = scenario.grid().size();
  Placement placement;
  placement.cells.reserve(scenario.num_uavs());
  while (placement.cells.size() < scenario.num_uavs()) {
    const std::size_t cell = rng.UniformIndex(grid_size);
    if (!scenario.allow_collocation() &&
        std::find(placement.cells.begin(), placement.cells.end(), cell) !=
            placement.cells.end()) {
      continue;
    }
    placement.cells.push_back(cell);
  }
  return placement;
}

std::optional<std::string> FindViolation(const Association& assoc,
                                         const Placement& placement,
                                         const Scenario& scenario) {
  if (assoc.num_users() != scenario.num_users() ||
      assoc.num_uavs() != scenario.num_uavs()) {
    throw InstanceError("association is " + std::to_string(assoc.num_users()) +
                        "x" + std::to_string(assoc.num_uavs()) +
                        ", scenario is " +
                        std::to_string(scenario.num_users()) + "x" +
                        std::to_string(scenario.num_uavs()));
  }
  if (!IsValidPlacement(placement, scenario)) return "grid placement";
  for (std::size_t i = 0; i < assoc.num_users(); ++i) {
    if (assoc.RowSum(i) > 1) return "single association";
  }
  for (std::size_t j = 0; j < assoc.num_uavs(); ++j) {
    if (assoc.ColumnSum(j) >
        static_cast<std::size_t>(scenario.uavs()[j].quota)) {
      return "uav quota";
    }
  }
  for (std::size_t i = 0; i < assoc.num_users(); ++i) {
    for (std::size_t j = 0; j < assoc.num_uavs(); ++j) {
      if (assoc.Get(i, j) &&
          SpectralEfficiency(Sinr(i, j, placement, scenario)) <
              scenario.eta_min()) {
        return "qos floor";
      }
    }
  }
  return std::nullopt;
}

bool IsFeasible(const Association& assoc, const Placement& placement,
                const Scenario& scenario) {
  return !FindViolation(assoc, placement, scenario).has_value();
}

}  // namespace uavopt
