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

#ifndef UAVOPT_MODEL_H_
#define UAVOPT_MODEL_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uavopt/rng.h"

namespace uavopt {

enum class LosFormula {
  kStandard,   // 1/(1+eps*exp(-beta*(theta-eps)))
  kAsPrinted,  // 1/(1+eps*exp(-beta*theta-eps))
};

// Environment and radio constants of the air-to-ground link.
struct ChannelParams {
  double epsilon = 9.61;  // LoS environment parameter
  double beta = 0.16;     // LoS slope per degree of elevation
  double alpha = 2.0;     // path-loss exponent
  double zeta_los_db = 1.0;
  double zeta_nlos_db = 20.0;
  double carrier_hz = 2e9;
  double light_speed = 3e8;
  double noise_dbm = -104.0;
  LosFormula los_formula = LosFormula::kStandard;

  // Throws InstanceError on a broken invariant.
  void Validate() const;
};

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double h = 0.0;
  bool operator==(const Point3&) const = default;
};

struct User {
  double x = 0.0;
  double y = 0.0;
};

struct Uav {
  double power_dbm = 10.0;
  int quota = 4;               // N_j, max served users
  double bandwidth_hz = 1e6;   // b_j, per served user
};

// One axis of the search grid: {min, min+step, ..., <= max}.
struct Axis {
  double min = 0.0;
  double max = 0.0;
  double step = 1.0;

  std::size_t Count() const;
  double At(std::size_t k) const;
};

// Discrete 3D search space. Points are indexed row-major with x slowest
// and h fastest: index = (ix * ny + iy) * nh + ih.
class Grid3D {
 public:
  Grid3D(Axis x, Axis y, Axis h);

  const Axis& x_axis() const { return x_; }
  const Axis& y_axis() const { return y_; }
  const Axis& h_axis() const { return h_; }
  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  std::size_t nh() const { return nh_; }
  std::size_t size() const { return nx_ * ny_ * nh_; }

  std::size_t Index(std::size_t ix, std::size_t iy, std::size_t ih) const {
    return (ix * ny_ + iy) * nh_ + ih;
  }
  std::array<std::size_t, 3> Coordinates(std::size_t index) const;
  Point3 Point(std::size_t index) const;
  std::vector<Point3> Enumerate() const;

  // In-bounds axis neighbours in the fixed order x-, x+, y-, y+, h-, h+.
  std::vector<std::size_t> AxisNeighbors(std::size_t index) const;

  // Grid index of p if p coincides with a grid point (within tol meters).
  std::optional<std::size_t> Locate(const Point3& p, double tol = 1e-6) const;

  // Index of the grid column closest to (x, y), at height index ih.
  std::size_t NearestXY(double x, double y, std::size_t ih) const;

  // Length of the diagonal of the bounding box (meters).
  double Diagonal() const;

  bool ContainsXY(double x, double y) const;

 private:
  Axis x_, y_, h_;
  std::size_t nx_, ny_, nh_;
};

// Grid cell of every UAV. A "configuration" when all UAVs are fixed.
struct Placement {
  std::vector<std::size_t> cells;

  std::size_t size() const { return cells.size(); }
  bool operator==(const Placement&) const = default;
};

// Binary user x UAV association matrix q.
class Association {
 public:
  Association() = default;
  Association(std::size_t num_users, std::size_t num_uavs)
      : users_(num_users), uavs_(num_uavs), q_(num_users * num_uavs, 0) {}

  std::size_t num_users() const { return users_; }
  std::size_t num_uavs() const { return uavs_; }

  bool Get(std::size_t user, std::size_t uav) const {
    return q_[user * uavs_ + uav] != 0;
  }
  void Set(std::size_t user, std::size_t uav, bool value) {
    q_[user * uavs_ + uav] = value ? 1 : 0;
  }
  void ClearColumn(std::size_t uav);

  std::size_t RowSum(std::size_t user) const;
  std::size_t ColumnSum(std::size_t uav) const;
  std::size_t NumAssociated() const;

  // First UAV serving the user, if any.
  std::optional<std::size_t> ServingUav(std::size_t user) const;
  std::vector<std::size_t> ServedUsers(std::size_t uav) const;

  bool operator==(const Association&) const = default;

 private:
  std::size_t users_ = 0;
  std::size_t uavs_ = 0;
  std::vector<std::uint8_t> q_;
};

// How the QoS floor given in dB is read.
enum class QosThreshold {
  kSpectralEfficiency,  // eta_min = 10^(dB/10) bit/s/Hz
  kSinr,                // gamma_min = 10^(dB/10), eta_min = log2(1+gamma_min)
};

struct QosFloor {
  double db = -3.0;
  QosThreshold mode = QosThreshold::kSpectralEfficiency;

  // Spectral-efficiency floor in bit/s/Hz.
  double EtaMin() const;
};

// Immutable, validated problem instance.
class Scenario {
 public:
  Scenario(std::vector<User> users, std::vector<Uav> uavs, Grid3D grid,
           ChannelParams channel, QosFloor qos, bool allow_collocation,
           std::uint64_t rng_seed);

  const std::vector<User>& users() const { return users_; }
  const std::vector<Uav>& uavs() const { return uavs_; }
  const Grid3D& grid() const { return grid_; }
  const ChannelParams& channel() const { return channel_; }
  const QosFloor& qos() const { return qos_; }
  bool allow_collocation() const { return allow_collocation_; }
  std::uint64_t rng_seed() const { return rng_seed_; }

  std::size_t num_users() const { return users_.size(); }
  std::size_t num_uavs() const { return uavs_.size(); }

  double eta_min() const { return eta_min_; }
  double noise_watts() const { return noise_watts_; }
  double power_watts(std::size_t uav) const { return power_watts_[uav]; }

 private:
  std::vector<User> users_;
  std::vector<Uav> uavs_;
  Grid3D grid_;
  ChannelParams channel_;
  QosFloor qos_;
  bool allow_collocation_;
  std::uint64_t rng_seed_;
  double eta_min_;
  double noise_watts_;
  std::vector<double> power_watts_;
};

// Throws InstanceError unless the placement has one cell per UAV.
void CheckPlacementShape(const Placement& placement, const Scenario& scenario);

// True iff every cell is a grid point and, unless collocation is allowed,
// no two UAVs share a cell.
bool IsValidPlacement(const Placement& placement, const Scenario& scenario);

// Uniformly random cells, pairwise distinct unless collocation is allowed.
Placement RandomPlacement(const Scenario& scenario, Rng& rng);

// Name of the first violated constraint, or nullopt when feasible.
// Throws InstanceError on dimension mismatch.
std::optional<std::string> FindViolation(const Association& assoc,
                                         const Placement& placement,
                                         const Scenario& scenario);

bool IsFeasible(const Association& assoc, const Placement& placement,
                const Scenario& scenario);

}  // namespace uavopt

#endif  // UAVOPT_MODEL_H_
