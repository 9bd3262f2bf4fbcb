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

// Centralized resource exchange between microservices of one
// application. A pass has three stages:
//
//   inspect  - split verdicts into underprovisioned (dr > max_r) and
//              overprovisioned (dr <= max_r) entries and price the gap
//              in milliCPU;
//   balance  - pool the residual milliCPU of overprovisioned entries,
//              hand it to underprovisioned entries largest-shortfall
//              first, then walk overprovisioned entries smallest-residual
//              first deciding how much capacity each one keeps;
//   adapt    - turn the balancer output into resource plans.
//
// The balancer follows the published heuristic literally, including the
// way the second loop charges the pool for capacity it strips. That
// accounting lets total capacity drift and the pool go negative; set
// ArmOptions::strict_conservation to charge retained residuals instead.

#ifndef HPALAB_RESOURCE_MANAGER_HPP
#define HPALAB_RESOURCE_MANAGER_HPP

#include <atomic>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "hpalab/core.hpp"
#include "hpalab/knowledge_base.hpp"
#include "hpalab/manager.hpp"

namespace hpalab {

struct ProvisionEntry {
  std::string name;
  MilliCpu res_req;
  Replicas dr = 0;
  Replicas max_r = 0;
  // Required replicas for Under (dr - max_r), residual for Over (max_r - dr).
  Replicas delta_r = 0;
  MilliCpu delta_res;
  ProvisionKind kind = ProvisionKind::Over;
};

struct InspectResult {
  std::vector<ProvisionEntry> under;
  std::vector<ProvisionEntry> over;
};

struct BalancerRow {
  std::string name;
  ProvisionKind kind = ProvisionKind::Over;
  double total_r = 0.0;
  // |u_max_r - max_r| * res_req: capacity gained (Under) or given up (Over).
  std::int64_t used_res = 0;
  Replicas feasible_r = 0;
  Replicas u_max_r = 0;
  std::int64_t pool_after = 0;
};

struct BalancerState {
  std::int64_t initial_pool = 0;
  // Signed: the literal overprovision pass may drive it below zero.
  std::int64_t pool = 0;
  // Lowest pool value observed while serving underprovisioned entries.
  std::int64_t min_pool_under_pass = 0;
  std::vector<BalancerRow> rows;  // execution order
};

struct Feasibility {
  Replicas feasible_r = 0;
  Replicas u_max_r = 0;

  friend bool operator==(const Feasibility&, const Feasibility&) = default;
};

using FeasibilityMap = std::map<std::string, Feasibility>;

struct BalanceResult {
  BalancerState state;
  FeasibilityMap feasibility;
};

struct ArmOptions {
  bool strict_conservation = false;
};

using SpecMap = std::map<std::string, MicroserviceSpec>;

// Throws DomainError when a verdict has no spec.
InspectResult inspect(std::span<const ManagerVerdict> verdicts,
                      const SpecMap& specs);

// Sorting is by delta_res (descending for under, ascending for over)
// with ties broken by name ascending. Inputs are taken by value because
// they are reordered.
BalanceResult balance(std::vector<ProvisionEntry> under,
                      std::vector<ProvisionEntry> over,
                      const ArmOptions& options = {});

// Throws DomainError when a verdict has no feasibility row.
std::vector<ResourcePlan> adapt(std::span<const ManagerVerdict> verdicts,
                                const FeasibilityMap& feasibility);

struct ArmResult {
  InspectResult inspection;
  BalancerState state;
  FeasibilityMap feasibility;
  std::vector<ResourcePlan> plans;  // verdict order
};

// inspect -> balance -> adapt, recording the balancer trace and the
// resulting plans to the knowledge base when a sink is given. Counts its
// invocations so callers can assert it stayed idle.
class AdaptiveResourceManager {
 public:
  explicit AdaptiveResourceManager(ArmOptions options = {})
      : options_(options) {}

  ArmResult run(std::span<const ManagerVerdict> verdicts, const SpecMap& specs,
                const KbSink& sink = {});

  std::uint64_t invocations() const { return invocations_.load(); }
  const ArmOptions& options() const { return options_; }

 private:
  ArmOptions options_;
  std::atomic<std::uint64_t> invocations_{0};
};

}  // namespace hpalab

#endif  // HPALAB_RESOURCE_MANAGER_HPP
