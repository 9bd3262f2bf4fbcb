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

#include "hpalab/resource_manager.hpp"

#include <algorithm>
#include <cmath>

namespace hpalab {

namespace {

// Pool expressed in replicas of the given request size.
double replica_units(std::int64_t pool, MilliCpu req) {
  return snap_to_integer(static_cast<double>(pool) /
                         static_cast<double>(req.count()));
}

Replicas floor_units(double total_r) {
  return static_cast<Replicas>(std::floor(total_r));
}

}  // namespace

InspectResult inspect(std::span<const ManagerVerdict> verdicts,
                      const SpecMap& specs) {
  InspectResult out;
  for (const auto& v : verdicts) {
    auto it = specs.find(v.name);
    if (it == specs.end()) {
      throw DomainError("no microservice spec for '" + v.name + "'");
    }
    const MilliCpu req = it->second.cpu_request;
    ProvisionEntry e{v.name, req, v.dr, v.max_r, 0, {}, ProvisionKind::Over};
    if (v.dr > v.max_r) {
      e.kind = ProvisionKind::Under;
      e.delta_r = v.dr - v.max_r;
      e.delta_res = req * e.delta_r;
      out.under.push_back(std::move(e));
    } else {
      e.delta_r = v.max_r - v.dr;
      e.delta_res = req * e.delta_r;
      out.over.push_back(std::move(e));
    }
  }
  return out;
}

BalanceResult balance(std::vector<ProvisionEntry> under,
                      std::vector<ProvisionEntry> over,
                      const ArmOptions& options) {
  BalanceResult result;
  auto& state = result.state;

  for (const auto& e : over) state.initial_pool += e.delta_res.count();
  state.pool = state.initial_pool;
  state.min_pool_under_pass = state.pool;

  std::sort(under.begin(), under.end(),
            [](const ProvisionEntry& a, const ProvisionEntry& b) {
              if (a.delta_res != b.delta_res) return a.delta_res > b.delta_res;
              return a.name < b.name;
            });
  for (const auto& e : under) {
    const double total_r = replica_units(state.pool, e.res_req);
    Replicas feasible = e.max_r;
    if (total_r >= static_cast<double>(e.delta_r)) {
      feasible = e.dr;
    } else if (total_r >= 1.0) {
      feasible = floor_units(total_r) + e.max_r;
    }
    const std::int64_t used = ((feasible - e.max_r) * e.res_req).count();
    state.pool -= used;
    state.min_pool_under_pass = std::min(state.min_pool_under_pass, state.pool);
    state.rows.push_back(BalancerRow{e.name, e.kind, total_r, used, feasible,
                                     feasible, state.pool});
    result.feasibility[e.name] = Feasibility{feasible, feasible};
  }

  std::sort(over.begin(), over.end(),
            [](const ProvisionEntry& a, const ProvisionEntry& b) {
              if (a.delta_res != b.delta_res) return a.delta_res < b.delta_res;
              return a.name < b.name;
            });
  for (const auto& e : over) {
    const double total_r = replica_units(state.pool, e.res_req);
    Replicas u_max = e.dr;
    if (total_r >= static_cast<double>(e.delta_r)) {
      u_max = e.max_r;
    } else if (total_r >= 1.0) {
      u_max = floor_units(total_r) + e.dr;
    }
    const std::int64_t stripped = ((e.max_r - u_max) * e.res_req).count();
    if (options.strict_conservation) {
      state.pool -= ((u_max - e.dr) * e.res_req).count();
    } else {
      state.pool -= stripped;
    }
    state.rows.push_back(BalancerRow{e.name, e.kind, total_r, stripped, e.dr,
                                     u_max, state.pool});
    result.feasibility[e.name] = Feasibility{e.dr, u_max};
  }
  return result;
}

std::vector<ResourcePlan> adapt(std::span<const ManagerVerdict> verdicts,
                                const FeasibilityMap& feasibility) {
  std::vector<ResourcePlan> plans;
  plans.reserve(verdicts.size());
  for (const auto& v : verdicts) {
    auto it = feasibility.find(v.name);
    if (it == feasibility.end()) {
      throw DomainError("no feasibility row for '" + v.name + "'");
    }
    const Feasibility& f = it->second;
    ScaleAction res_sd = ScaleAction::NoScale;
    if (f.feasible_r == v.dr) {
      res_sd = v.sd;
    } else if (f.feasible_r > v.max_r && f.feasible_r < v.dr) {
      res_sd = ScaleAction::ScaleUp;
    }
    plans.push_back(ResourcePlan{v.name, res_sd, f.feasible_r, f.u_max_r});
  }
  return plans;
}

ArmResult AdaptiveResourceManager::run(std::span<const ManagerVerdict> verdicts,
                                       const SpecMap& specs,
                                       const KbSink& sink) {
  ++invocations_;
  ArmResult out;
  out.inspection = inspect(verdicts, specs);
  auto balanced =
      balance(out.inspection.under, out.inspection.over, options_);
  out.state = std::move(balanced.state);
  out.feasibility = std::move(balanced.feasibility);
  out.plans = adapt(verdicts, out.feasibility);

  if (sink.kb != nullptr) {
    std::map<std::string, const ProvisionEntry*> entries;
    for (const auto& e : out.inspection.under) entries[e.name] = &e;
    for (const auto& e : out.inspection.over) entries[e.name] = &e;
    std::int64_t step = 0;
    for (const auto& row : out.state.rows) {
      const ProvisionEntry& e = *entries.at(row.name);
      sink.kb->append(KbEvent{
          sink.run_id, sink.tick,
          ArmTraceRecord{row.name, step++, row.kind, e.dr, e.max_r, e.delta_r,
                         e.delta_res.count(), row.total_r, row.used_res,
                         row.feasible_r, row.u_max_r, row.pool_after}});
    }
    for (const auto& plan : out.plans) {
      sink.kb->append(KbEvent{sink.run_id, sink.tick, PlanRecord{plan, "arm"}});
    }
  }
  return out;
}

}  // namespace hpalab
