//  Copyright 2026 The hpalab Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#include "hpalab/capacity_analyzer.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace hpalab {

FeasibilityOutcome analyze(std::span<const ManagerVerdict> verdicts) {
  std::set<std::string> seen;
  for (const auto& v : verdicts) {
    if (!seen.insert(v.name).second) {
      throw DomainError("duplicate verdict for microservice '" + v.name + "'");
    }
  }

  const bool feasible = std::all_of(
      verdicts.begin(), verdicts.end(),
      [](const ManagerVerdict& v) { return v.dr <= v.max_r; });
  if (!feasible) {
    return Infeasible{{verdicts.begin(), verdicts.end()}};
  }

  AllFeasible out;
  out.plans.reserve(verdicts.size());
  for (const auto& v : verdicts) {
    out.plans.push_back(ResourcePlan{v.name, v.sd, v.dr, v.max_r});
  }
  return out;
}

}  // namespace hpalab
