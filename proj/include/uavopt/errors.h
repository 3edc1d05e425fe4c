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

#ifndef UAVOPT_ERRORS_H_
#define UAVOPT_ERRORS_H_

#include <stdexcept>
#include <string>

namespace uavopt {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent problem instance (dimensions, invariants).
class InstanceError : public Error {
 public:
  using Error::Error;
};

// Link geometry that no channel formula accepts (r < d, r == 0).
class GeometryError : public Error {
 public:
  using Error::Error;
};

// A checked evaluation received an association that breaks a constraint.
// constraint() names the violated constraint, e.g. "uav quota".
class ConstraintViolation : public Error {
 public:
  ConstraintViolation(std::string constraint, const std::string& detail)
      : Error("constraint violated: " + constraint + ": " + detail),
        constraint_(std::move(constraint)) {}
  const std::string& constraint() const { return constraint_; }

 private:
  std::string constraint_;
};

// Caller broke an operation precondition.
class ContractError : public Error {
 public:
  using Error::Error;
};

// An exhaustive search refused to run because its state space is too big.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, double states)
      : Error(what), states_(states) {}
  double states() const { return states_; }

 private:
  double states_;
};

}  // namespace uavopt

#endif  // UAVOPT_ERRORS_H_
