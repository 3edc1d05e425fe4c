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

#ifndef UAVOPT_TRACE_H_
#define UAVOPT_TRACE_H_

#include <cstddef>
#include <optional>

namespace uavopt {

// One algorithm-iteration snapshot. Temperature, mover and acceptance are
// only meaningful for log-linear learning and stay empty elsewhere.
struct TraceRecord {
  std::size_t iter = 0;
  std::optional<double> temperature;
  std::optional<std::size_t> mover;
  std::optional<bool> accepted;
  double sum_rate_bps = 0.0;
  double best_sum_rate_bps = 0.0;
};

}  // namespace uavopt

#endif  // UAVOPT_TRACE_H_
