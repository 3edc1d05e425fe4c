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

// Python bindings for the placement and association optimizers.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "uavopt/blll.h"
#include "uavopt/channel.h"
#include "uavopt/errors.h"
#include "uavopt/greedy.h"
#include "uavopt/objective.h"
#include "uavopt/oracle.h"
#include "uavopt/runner.h"
#include "uavopt/scenario_io.h"
#include "uavopt/scenarios.h"

namespace py = pybind11;

namespace uavopt {
namespace {

// Association as a list of (user, uav) pairs.
std::vector<std::pair<std::size_t, std::size_t>> Pairs(const Association& q) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < q.num_users(); ++i) {
    for (std::size_t j = 0; j < q.num_uavs(); ++j) {
      if (q.Get(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

Association FromPairs(const Scenario& s,
                      const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  Association q(s.num_users(), s.num_uavs());
  for (const auto& [i, j] : pairs) {
    if (i >= s.num_users() || j >= s.num_uavs()) {
      throw InstanceError("association pair out of range");
    }
    q.Set(i, j, true);
  }
  return q;
}

py::dict GreedyDict(const GreedyResult& g) {
  py::dict d;
  d["sum_rate_bps"] = g.best_value;
  d["best_index"] = g.best_index;
  d["placement"] = g.best_placement.cells;
  d["association"] = Pairs(g.best_association);
  d["values"] = g.values;
  d["iterations"] = g.iterations;
  return d;
}

py::dict RunBlllPy(const Scenario& s, std::size_t iters, std::uint64_t seed,
                   std::optional<double> t0, std::optional<double> range_m,
                   const std::string& activation, std::size_t trace_stride) {
  BlllConfig config;
  config.max_iters = iters;
  config.seed = seed;
  config.t0 = t0;
  config.neighborhood_range_m = range_m;
  config.trace_stride = trace_stride;
  if (activation == "coin_flip") {
    config.activation = Activation::kCoinFlip;
  } else if (activation != "uniform_single") {
    throw InstanceError("activation must be uniform_single or coin_flip");
  }
  BlllResult r;
  {
    py::gil_scoped_release release;
    r = RunBlll(s, config);
  }
  std::vector<double> trace_rate;
  for (const TraceRecord& row : r.trace) trace_rate.push_back(row.sum_rate_bps);
  py::dict d;
  d["sum_rate_bps"] = r.best_sum_rate;
  d["placement"] = r.best_placement.cells;
  d["association"] = Pairs(r.best_association);
  d["final_sum_rate_bps"] = r.final_sum_rate;
  d["final_placement"] = r.final_placement.cells;
  d["final_association"] = Pairs(r.final_association);
  d["iterations"] = r.iterations;
  d["accepted"] = r.accepted;
  d["t0"] = r.t0;
  d["trace_sum_rate_bps"] = trace_rate;
  return d;
}

}  // namespace
}  // namespace uavopt

PYBIND11_MODULE(_uavopt, m) {
  using namespace uavopt;
  m.doc() = "UAV 3D placement and user association sum-rate optimizers";

  // Translators run newest first, so the base class goes in first.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InstanceError>(m, "InstanceError", PyExc_ValueError);
  py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

  py::class_<Scenario>(m, "Scenario")
      .def_property_readonly("num_users", &Scenario::num_users)
      .def_property_readonly("num_uavs", &Scenario::num_uavs)
      .def_property_readonly("grid_size", [](const Scenario& s) { return s.grid().size(); })
      .def_property_readonly("eta_min", &Scenario::eta_min)
      .def("cell_point",
           [](const Scenario& s, std::size_t cell) {
             if (cell >= s.grid().size()) throw InstanceError("cell out of range");
             const Point3 p = s.grid().Point(cell);
             return py::make_tuple(p.x, p.y, p.h);
           })
      .def("to_json", [](const Scenario& s) { return ScenarioToJson(s).dump(); });

  m.def("parse_scenario", [](const std::string& text) { return ParseScenario(text); },
        py::arg("text"));
  m.def("load_scenario", &LoadScenario, py::arg("path"));
  m.def("baseline_scenario", &BaselineScenario, py::arg("seed"),
        py::arg("num_users") = 45, py::arg("num_uavs") = 5);
  m.def("desk_scenario", &DeskScenario, py::arg("seed"));

  m.def("los_probability",
        [](double r, double d, const std::string& formula) {
          ChannelParams params;
          if (formula == "as_printed") params.los_formula = LosFormula::kAsPrinted;
          return LosProbability({r, d}, params);
        },
        py::arg("r"), py::arg("d"), py::arg("formula") = "standard");
  m.def("path_loss_gain",
        [](double r, double d) { return PathLossGain({r, d}, ChannelParams{}); },
        py::arg("r"), py::arg("d"));

  m.def("sum_rate",
        [](const Scenario& s, const std::vector<std::size_t>& cells,
           const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
          return SumRate(FromPairs(s, pairs), Placement{cells}, s);
        },
        py::arg("scenario"), py::arg("placement"), py::arg("association"));
  m.def("marginal_utility",
        [](const Scenario& s, std::size_t uav, const std::vector<std::size_t>& cells,
           const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
          CheckPlacementShape(Placement{cells}, s);
          return MarginalUtility(uav, FromPairs(s, pairs), Placement{cells}, s);
        },
        py::arg("scenario"), py::arg("uav"), py::arg("placement"),
        py::arg("association"));

  m.def("run_blll", &RunBlllPy, py::arg("scenario"), py::arg("iters") = 10000,
        py::arg("seed") = 1, py::arg("t0") = py::none(),
        py::arg("range_m") = py::none(), py::arg("activation") = "uniform_single",
        py::arg("trace_stride") = 1);
  m.def("greedy_per_config",
        [](const Scenario& s, const std::vector<std::size_t>& cells) {
          const ConfigGreedy g = GreedyPerConfig(Placement{cells}, s);
          py::dict d;
          d["sum_rate_bps"] = g.value;
          d["association"] = Pairs(g.association);
          d["iterations"] = g.iterations;
          return d;
        },
        py::arg("scenario"), py::arg("placement"));
  m.def("greedy_over_configs",
        [](const Scenario& s, const std::vector<std::vector<std::size_t>>& configs) {
          ConfigurationSet set;
          for (const auto& cells : configs) set.placements.push_back({cells});
          return GreedyDict(GreedyOverConfigs(set, s));
        },
        py::arg("scenario"), py::arg("configs"));
  m.def("exhaustive_greedy",
        [](const Scenario& s, std::size_t max_configs) {
          return GreedyDict(GreedyOverConfigs(ExhaustiveConfigurations(s, max_configs), s));
        },
        py::arg("scenario"), py::arg("max_configs") = 1000000);
  m.def("kmeans_greedy",
        [](const Scenario& s, std::uint64_t seed, std::size_t rounds, bool permute) {
          Rng rng(seed);
          KmeansGreedyOptions options;
          options.kmeans_rounds = rounds;
          options.permute = permute;
          KmeansGreedyResult r;
          {
            py::gil_scoped_release release;
            r = CombinedKmeansGreedy(s, rng, options);
          }
          py::dict d = GreedyDict(r.greedy);
          std::vector<std::pair<double, double>> centers;
          for (const Point2& c : r.centers) centers.emplace_back(c.x, c.y);
          d["centers"] = centers;
          d["num_configs"] = r.num_configs;
          return d;
        },
        py::arg("scenario"), py::arg("seed") = 1, py::arg("rounds") = 50,
        py::arg("permute") = false);
  m.def("adapted_greedy",
        [](const Scenario& s) {
          AdaptedGreedyResult r;
          {
            py::gil_scoped_release release;
            r = AdaptedGreedy(s);
          }
          py::dict d;
          d["sum_rate_bps"] = r.sum_rate;
          d["sequential_value_bps"] = r.sequential_value;
          d["placement"] = r.placement.cells;
          d["association"] = Pairs(r.association);
          d["order"] = r.order;
          d["iterations"] = r.iterations;
          return d;
        },
        py::arg("scenario"));
  m.def("global_optimum",
        [](const Scenario& s, double max_configs, double max_assoc_states) {
          OracleBudget budget{max_configs, max_assoc_states};
          budget.Validate();
          const GlobalOptimum o = FindGlobalOptimum(s, budget);
          py::dict d;
          d["sum_rate_bps"] = o.value;
          d["placement"] = o.placement.cells;
          d["association"] = Pairs(o.association);
          d["configs_evaluated"] = o.configs_evaluated;
          return d;
        },
        py::arg("scenario"), py::arg("max_configs") = 1e6,
        py::arg("max_assoc_states") = 1e7);
  m.def("run_manifest",
        [](const std::string& manifest_json) {
          const RunManifest manifest =
              ManifestFromJson(nlohmann::json::parse(manifest_json));
          std::ostringstream log;
          int status;
          {
            py::gil_scoped_release release;
            status = RunManifestToDisk(manifest, log);
          }
          return py::make_tuple(status, log.str());
        },
        py::arg("manifest_json"));
}
