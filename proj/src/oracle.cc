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

#include "uavopt/oracle.h"

#include <algorithm>
#include <string>
#include <vector>

#include "uavopt/errors.h"
#include "uavopt/greedy.h"

namespace uavopt {
namespace {

class AssociationSearch {
 public:
  explicit AssociationSearch(const RateTable& table) {
    const Scenario& s = table.scenario();
    num_uavs_ = s.num_uavs();
    choices_.resize(s.num_users());
    for (std::size_t i = 0; i < s.num_users(); ++i) {
      for (std::size_t j = 0; j < num_uavs_; ++j) {
        if (s.uavs()[j].quota > 0 && table.MeetsQos(i, j)) {
          choices_[i].push_back({j, table.Rate(i, j)});
        }
      }
    }
    for (const Uav& u : s.uavs()) room_.push_back(u.quota);
    current_.assign(s.num_users(), -1);
  }

  double StateCount() const {
    double n = 1.0;
    for (const auto& c : choices_) n *= static_cast<double>(c.size() + 1);
    return n;
  }

  AssociationOptimum Run() {
    best_value_ = -1.0;
    Visit(0, 0.0);
    AssociationOptimum out{
        Association(choices_.size(), num_uavs_), best_value_, StateCount()};
    for (std::size_t i = 0; i < best_.size(); ++i) {
      if (best_[i] >= 0) out.association.Set(i, best_[i], true);
    }
    return out;
  }

 private:
  struct Choice {
    std::size_t uav;
    double rate;
  };

  void Visit(std::size_t user, double value) {
    if (user == choices_.size()) {
      if (value > best_value_) {
        best_value_ = value;
        best_ = current_;
      }
      return;
    }
    current_[user] = -1;
    Visit(user + 1, value);
    for (const Choice& c : choices_[user]) {
      if (room_[c.uav] <= 0) continue;
      --room_[c.uav];
      current_[user] = static_cast<int>(c.uav);
      Visit(user + 1, value + c.rate);
      ++room_[c.uav];
    }
    current_[user] = -1;
  }

  std::size_t num_uavs_ = 0;
  std::vector<std::vector<Choice>> choices_;
  std::vector<int> room_;
  std::vector<int> current_;
  std::vector<int> best_;
  double best_value_ = -1.0;
};

}  // namespace

void OracleBudget::Validate() const {
  if (!(max_configs >= 1) || !(max_assoc_states >= 1)) {
    throw InstanceError("oracle budgets must be >= 1");
  }
}

AssociationOptimum BestAssociation(const RateTable& table,
                                   const OracleBudget& budget) {
  budget.Validate();
  AssociationSearch search(table);
  const double states = search.StateCount();
  if (states > budget.max_assoc_states) {
    throw BudgetExceeded("association search needs " +
                             std::to_string(states) + " states",
                         states);
  }
  return search.Run();
}

AssociationOptimum BestAssociation(const Placement& placement,
                                   const Scenario& scenario,
                                   const OracleBudget& budget) {
  return BestAssociation(RateTable(placement, scenario), budget);
}

GlobalOptimum FindGlobalOptimum(const Scenario& scenario,
                                const OracleBudget& budget) {
  budget.Validate();
  const double count = ExhaustiveConfigurationCount(scenario);
  if (count > budget.max_configs) {
    throw BudgetExceeded(
        "placement search needs " + std::to_string(count) + " configurations",
        count);
  }
  GlobalOptimum best;
  best.value = -1.0;
  ForEachPlacement(scenario, [&](const Placement& p) {
    ++best.configs_evaluated;
    AssociationOptimum opt = BestAssociation(RateTable(p, scenario), budget);
    best.values.push_back(opt.value);
    if (opt.value > best.value) {
      best.value = opt.value;
      best.placement = p;
      best.association = std::move(opt.association);
    }
  });
  return best;
}

}  // namespace uavopt
