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

#ifndef UAVOPT_SCENARIO_IO_H_
#define UAVOPT_SCENARIO_IO_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"
#include "uavopt/errors.h"
#include "uavopt/greedy.h"
#include "uavopt/model.h"

namespace uavopt {

// Malformed document: bad JSON syntax, a missing key or a wrong type.
// line() is 1-based and points at the offending token or key.
class ScenarioParseError : public Error {
 public:
  ScenarioParseError(const std::string& what, std::size_t line,
                     std::size_t column)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Parses a scenario document. dB quantities use `_db`/`_dbm` keys, lengths
// are plain meters. Syntax and schema problems raise ScenarioParseError;
// a well-formed document describing an invalid instance raises
// InstanceError.
Scenario ParseScenario(std::string_view text);
Scenario LoadScenario(const std::filesystem::path& path);

nlohmann::json ScenarioToJson(const Scenario& scenario);

// [{"uav": j, "cell": c, "x": .., "y": .., "h": ..}, ...]
nlohmann::json PlacementToJson(const Placement& placement,
                               const Scenario& scenario);
// Accepts the format above; entries may give "cell" or x/y/h coordinates.
Placement PlacementFromJson(const nlohmann::json& j, const Scenario& scenario);

// [[user, uav], ...] for every associated pair, user-major.
nlohmann::json AssociationToJson(const Association& assoc);

nlohmann::json ConfigurationsToJson(const ConfigurationSet& configs,
                                    const Scenario& scenario);
ConfigurationSet ConfigurationsFromJson(const nlohmann::json& j,
                                        const Scenario& scenario);
ConfigurationSet LoadConfigurations(const std::filesystem::path& path,
                                    const Scenario& scenario);

std::string ReadTextFile(const std::filesystem::path& path);

}  // namespace uavopt

#endif  // UAVOPT_SCENARIO_IO_H_
