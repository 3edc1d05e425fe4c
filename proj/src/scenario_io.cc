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

#include "uavopt/scenario_io.h"

#include <fstream>
#include <sstream>

#include "uavopt/scenarios.h"

namespace uavopt {
namespace {

using nlohmann::json;

// Line/column of a byte offset into text.
std::pair<std::size_t, std::size_t> Locate(std::string_view text,
                                           std::size_t offset) {
  std::size_t line = 1, column = 1;
  for (std::size_t k = 0; k < std::min(offset, text.size()); ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

// Schema access that reports the line where the key (or its parent) sits.
class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  [[noreturn]] void Fail(const std::string& key, const std::string& what) const {
    const std::string needle = "\"" + key + "\"";
    const std::size_t at = key.empty() ? std::string_view::npos
                                       : text_.find(needle);
    const auto [line, column] =
        Locate(text_, at == std::string_view::npos ? 0 : at);
    throw ScenarioParseError(what, line, column);
  }

  const json& Object(const json& parent, const std::string& key) const {
    if (!parent.contains(key)) Fail(key, "missing object \"" + key + "\"");
    const json& v = parent.at(key);
    if (!v.is_object()) Fail(key, "\"" + key + "\" must be an object");
    return v;
  }

  double Number(const json& obj, const std::string& key) const {
    if (!obj.contains(key)) Fail(key, "missing number \"" + key + "\"");
    const json& v = obj.at(key);
    if (!v.is_number()) Fail(key, "\"" + key + "\" must be a number");
    return v.get<double>();
  }

  double Number(const json& obj, const std::string& key, double fallback) const {
    return obj.contains(key) ? Number(obj, key) : fallback;
  }

  std::int64_t Integer(const json& obj, const std::string& key,
                       std::int64_t fallback) const {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) Fail(key, "\"" + key + "\" must be an integer");
    return v.get<std::int64_t>();
  }

  std::uint64_t Unsigned(const json& obj, const std::string& key,
                         std::uint64_t fallback) const {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_unsigned()) {
      Fail(key, "\"" + key + "\" must be a non-negative integer");
    }
    return v.get<std::uint64_t>();
  }

  bool Boolean(const json& obj, const std::string& key, bool fallback) const {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_boolean()) Fail(key, "\"" + key + "\" must be true or false");
    return v.get<bool>();
  }

  std::string String(const json& obj, const std::string& key,
                     const std::string& fallback) const {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_string()) Fail(key, "\"" + key + "\" must be a string");
    return v.get<std::string>();
  }

 private:
  std::string_view text_;
};

Axis ReadAxis(const Reader& r, const json& grid, const std::string& name,
              const std::string& step) {
  return {r.Number(grid, name + "_min"), r.Number(grid, name + "_max"),
          r.Number(grid, step)};
}

Uav ReadUav(const Reader& r, const json& obj, const Uav& base) {
  Uav u = base;
  u.power_dbm = r.Number(obj, "power_dbm", base.power_dbm);
  u.quota = static_cast<int>(r.Integer(obj, "quota", base.quota));
  u.bandwidth_hz = r.Number(obj, "bandwidth_hz", base.bandwidth_hz);
  return u;
}

}  // namespace

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Scenario ParseScenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    const auto [line, column] = Locate(text, byte);
    throw ScenarioParseError(e.what(), line, column);
  }
  const Reader r(text);
  if (!doc.is_object()) r.Fail("", "scenario must be a JSON object");

  const json& g = r.Object(doc, "grid");
  const Grid3D grid(ReadAxis(r, g, "x", "dx"), ReadAxis(r, g, "y", "dy"),
                    ReadAxis(r, g, "h", "dh"));

  ChannelParams channel;
  if (doc.contains("channel")) {
    const json& c = r.Object(doc, "channel");
    channel.epsilon = r.Number(c, "epsilon", channel.epsilon);
    channel.beta = r.Number(c, "beta", channel.beta);
    channel.alpha = r.Number(c, "alpha", channel.alpha);
    channel.zeta_los_db = r.Number(c, "zeta_los_db", channel.zeta_los_db);
    channel.zeta_nlos_db = r.Number(c, "zeta_nlos_db", channel.zeta_nlos_db);
    channel.carrier_hz = r.Number(c, "carrier_hz", channel.carrier_hz);
    channel.light_speed = r.Number(c, "light_speed", channel.light_speed);
    channel.noise_dbm = r.Number(c, "noise_dbm", channel.noise_dbm);
    const std::string los = r.String(c, "los_formula", "standard");
    if (los == "standard") {
      channel.los_formula = LosFormula::kStandard;
    } else if (los == "as_printed") {
      channel.los_formula = LosFormula::kAsPrinted;
    } else {
      r.Fail("los_formula", "los_formula must be \"standard\" or \"as_printed\"");
    }
  }

  QosFloor qos;
  qos.db = r.Number(doc, "eta_min_db", qos.db);
  const std::string mode = r.String(doc, "qos_threshold", "spectral_efficiency");
  if (mode == "spectral_efficiency") {
    qos.mode = QosThreshold::kSpectralEfficiency;
  } else if (mode == "sinr") {
    qos.mode = QosThreshold::kSinr;
  } else {
    r.Fail("qos_threshold",
           "qos_threshold must be \"spectral_efficiency\" or \"sinr\"");
  }
  const bool allow_collocation = r.Boolean(doc, "allow_collocation", false);
  const std::uint64_t seed = r.Unsigned(doc, "rng_seed", 1);

  std::vector<Uav> uavs;
  if (doc.contains("uavs")) {
    if (!doc["uavs"].is_array()) r.Fail("uavs", "\"uavs\" must be an array");
    for (const json& u : doc["uavs"]) {
      if (!u.is_object()) r.Fail("uavs", "UAV entries must be objects");
      uavs.push_back(ReadUav(r, u, Uav{}));
    }
  } else if (doc.contains("uav_count")) {
    const Uav base = doc.contains("uav_defaults")
                         ? ReadUav(r, r.Object(doc, "uav_defaults"), Uav{})
                         : Uav{};
    const std::uint64_t n = r.Unsigned(doc, "uav_count", 0);
    uavs.assign(n, base);
  } else {
    r.Fail("", "scenario needs \"uavs\" or \"uav_count\"");
  }

  std::vector<User> users;
  if (doc.contains("users")) {
    if (!doc["users"].is_array()) r.Fail("users", "\"users\" must be an array");
    for (const json& u : doc["users"]) {
      if (!u.is_object()) r.Fail("users", "user entries must be objects");
      users.push_back({r.Number(u, "x"), r.Number(u, "y")});
    }
  } else if (doc.contains("random_users")) {
    users = RandomUsers(grid, r.Unsigned(doc, "random_users", 0), seed);
  } else {
    r.Fail("", "scenario needs \"users\" or \"random_users\"");
  }

  return Scenario(std::move(users), std::move(uavs), grid, channel, qos,
                  allow_collocation, seed);
}

Scenario LoadScenario(const std::filesystem::path& path) {
  return ParseScenario(ReadTextFile(path));
}

nlohmann::json ScenarioToJson(const Scenario& s) {
  const Grid3D& g = s.grid();
  const ChannelParams& c = s.channel();
  json doc;
  doc["grid"] = {{"x_min", g.x_axis().min}, {"x_max", g.x_axis().max},
                 {"dx", g.x_axis().step},   {"y_min", g.y_axis().min},
                 {"y_max", g.y_axis().max}, {"dy", g.y_axis().step},
                 {"h_min", g.h_axis().min}, {"h_max", g.h_axis().max},
                 {"dh", g.h_axis().step}};
  doc["channel"] = {
      {"epsilon", c.epsilon},
      {"beta", c.beta},
      {"alpha", c.alpha},
      {"zeta_los_db", c.zeta_los_db},
      {"zeta_nlos_db", c.zeta_nlos_db},
      {"carrier_hz", c.carrier_hz},
      {"light_speed", c.light_speed},
      {"noise_dbm", c.noise_dbm},
      {"los_formula",
       c.los_formula == LosFormula::kStandard ? "standard" : "as_printed"}};
  doc["eta_min_db"] = s.qos().db;
  doc["qos_threshold"] = s.qos().mode == QosThreshold::kSpectralEfficiency
                             ? "spectral_efficiency"
                             : "sinr";
  doc["allow_collocation"] = s.allow_collocation();
  doc["rng_seed"] = s.rng_seed();
  doc["uavs"] = json::array();
  for (const Uav& u : s.uavs()) {
    doc["uavs"].push_back({{"power_dbm", u.power_dbm},
                           {"quota", u.quota},
                           {"bandwidth_hz", u.bandwidth_hz}});
  }
  doc["users"] = json::array();
  for (const User& u : s.users()) doc["users"].push_back({{"x", u.x}, {"y", u.y}});
  return doc;
}

nlohmann::json PlacementToJson(const Placement& placement,
                               const Scenario& scenario) {
  json out = json::array();
  for (std::size_t j = 0; j < placement.size(); ++j) {
    const Point3 p = scenario.grid().Point(placement.cells[j]);
    out.push_back({{"uav", j},
                   {"cell", placement.cells[j]},
                   {"x", p.x},
                   {"y", p.y},
                   {"h", p.h}});
  }
  return out;
}

Placement PlacementFromJson(const nlohmann::json& j, const Scenario& scenario) {
  if (!j.is_array()) throw InstanceError("placement must be a JSON array");
  Placement placement;
  for (const json& entry : j) {
    if (entry.contains("cell")) {
      placement.cells.push_back(entry.at("cell").get<std::size_t>());
      continue;
    }
    const Point3 p{entry.at("x").get<double>(), entry.at("y").get<double>(),
                   entry.at("h").get<double>()};
    const auto cell = scenario.grid().Locate(p);
    if (!cell) throw InstanceError("placement point is not a grid point");
    placement.cells.push_back(*cell);
  }
  if (!IsValidPlacement(placement, scenario)) {
    throw InstanceError("placement is not valid for the scenario grid");
  }
  return placement;
}

nlohmann::json AssociationToJson(const Association& assoc) {
  json out = json::array();
  for (std::size_t i = 0; i < assoc.num_users(); ++i) {
    for (std::size_t j = 0; j < assoc.num_uavs(); ++j) {
      if (assoc.Get(i, j)) out.push_back({i, j});
    }
  }
  return out;
}

nlohmann::json ConfigurationsToJson(const ConfigurationSet& configs,
                                    const Scenario& scenario) {
  json out = json::array();
  for (const Placement& p : configs.placements) {
    out.push_back(PlacementToJson(p, scenario));
  }
  return out;
}

ConfigurationSet ConfigurationsFromJson(const nlohmann::json& j,
                                        const Scenario& scenario) {
  if (!j.is_array() || j.empty()) {
    throw InstanceError("configuration set must be a non-empty array");
  }
  ConfigurationSet set;
  set.provenance = ConfigProvenance::kExplicit;
  for (const json& p : j) set.placements.push_back(PlacementFromJson(p, scenario));
  return set;
}

ConfigurationSet LoadConfigurations(const std::filesystem::path& path,
                                    const Scenario& scenario) {
  const std::string text = ReadTextFile(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, column] = Locate(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ScenarioParseError(e.what(), line, column);
  }
  return ConfigurationsFromJson(doc, scenario);
}

}  // namespace uavopt
