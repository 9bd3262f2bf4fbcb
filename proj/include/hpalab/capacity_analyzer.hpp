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

#ifndef HPALAB_CAPACITY_ANALYZER_HPP
#define HPALAB_CAPACITY_ANALYZER_HPP

#include <span>
#include <variant>
#include <vector>

#include "hpalab/core.hpp"

namespace hpalab {

struct AllFeasible {
  std::vector<ResourcePlan> plans;
};

// Carries every verdict of the application, not only the offending ones.
struct Infeasible {
  std::vector<ManagerVerdict> verdicts;
};

using FeasibilityOutcome = std::variant<AllFeasible, Infeasible>;

// Passes verdicts through as plans when every dr <= max_r; otherwise
// escalates the whole snapshot. Throws DomainError on duplicate names.
FeasibilityOutcome analyze(std::span<const ManagerVerdict> verdicts);

}  // namespace hpalab

#endif  // HPALAB_CAPACITY_ANALYZER_HPP
