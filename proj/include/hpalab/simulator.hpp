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

#ifndef HPALAB_SIMULATOR_HPP
#define HPALAB_SIMULATOR_HPP

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hpalab/baseline.hpp"
#include "hpalab/core.hpp"
#include "hpalab/knowledge_base.hpp"
#include "hpalab/resource_manager.hpp"

namespace hpalab {

// Ramp from zero users at `spawn_rate` users/s until `peak_users`, then
// hold until the end of the run.
struct LoadProfile {
  std::int64_t total_duration_s = 900;
  std::int64_t ramp_duration_s = 300;
  std::int64_t peak_users = 600;
  double spawn_rate = 2.0;

  void validate() const;
};

// Throws DomainError when t is outside [0, total_duration_s].
std::int64_t users_at(const LoadProfile& profile, std::int64_t t);

struct DemandCoefficients {
  double base_m = 0.0;
  double per_user_m = 0.0;
};

using DemandModel = std::map<std::string, DemandCoefficients>;

// base + per_user * users, rounded to whole millicores.
MilliCpu service_demand(const DemandModel& model, const std::string& service,
                        std::int64_t users);

// Percent of cpu_request used by one replica when `demand` is spread
// evenly over `cr` replicas, capped at cpu_limit. Zero replicas report 0.
double utilization(MilliCpu demand, Replicas cr, const MicroserviceSpec& spec);

struct ServiceConfig {
  MicroserviceSpec spec;
  SlaMetrics sla;
  Replicas initial_cr = 1;
  DemandCoefficients demand;
};

struct SimulationFlags {
  bool strict_conservation = false;
  // Executor moves replicas to res_dr even when the plan says NoScale.
  bool apply_res_dr_on_noscale = false;
  // Discard exchanged capacity and restore configured max_r each round.
  bool reset_max_r_each_tick = false;
};

struct Timing {
  std::int64_t tick_s = 1;
  std::int64_t reconcile_period_s = 15;
  std::int64_t sample_period_s = 1;
  std::int64_t startup_delay_s = 0;
  // Trailing mean of CMV over this many seconds; 0 means instantaneous.
  std::int64_t cmv_window_s = 0;
};

struct Scenario {
  std::string id;
  std::vector<ServiceConfig> services;
  LoadProfile load;
  Timing timing;
  SimulationFlags flags;
  BaselineOptions baseline;
  // Relative multiplicative noise on demand, drawn per service per tick.
  double demand_jitter = 0.0;
  std::uint64_t seed = 0;

  // Throws DomainError describing the first violated constraint.
  void validate() const;
  SpecMap specs() const;
  DemandModel demand_model() const;
};

// "<maxR>R-<threshold>%", e.g. "5R-50%".
std::string scenario_id(Replicas max_r, double threshold);

enum class AutoscalerKind { Smart, Baseline };

std::string_view to_string(AutoscalerKind k);
AutoscalerKind parse_autoscaler(std::string_view text);

struct PendingReplicas {
  Replicas count = 0;
  std::int64_t ready_at = 0;
};

struct ServiceState {
  MicroserviceSpec spec;
  SlaMetrics sla;  // max_r may be rewritten by the exchange
  Replicas configured_max_r = 0;
  Replicas cr = 0;
  std::vector<PendingReplicas> pending;

  Replicas pending_total() const;
};

struct ClusterState {
  std::vector<ServiceState> services;
  std::int64_t time = 0;

  ServiceState& at(const std::string& name);
  const ServiceState& at(const std::string& name) const;
};

ClusterState initial_state(const Scenario& scenario);

// Moves every pending replica whose ready time has come into cr.
void promote_ready(ClusterState& state, std::int64_t now);

struct ExecutorOptions {
  std::int64_t startup_delay_s = 0;
  bool apply_res_dr_on_noscale = false;
};

// Scale-ups are queued and become ready startup_delay_s after state.time
// (at the earliest on the next tick); scale-downs take effect at once.
// Throws DomainError for a plan naming an unknown service.
ClusterState apply_plans(ClusterState state, std::span<const ResourcePlan> plans,
                         const ExecutorOptions& options = {});

struct ServiceSample {
  std::string name;
  double cmv = 0.0;
  double tmv = 0.0;
  Replicas cr = 0;
  Replicas dr = 0;
  Replicas max_r = 0;
  std::int64_t request_m = 0;
  ScaleAction sd = ScaleAction::NoScale;
  ScaleAction res_sd = ScaleAction::NoScale;
  Replicas res_dr = 0;
  std::int64_t load_m = 0;    // CPU the synthetic workload asks for
  std::int64_t supply = 0;    // cr * request
  std::int64_t demand = 0;    // dr * request
  std::int64_t capacity = 0;  // max_r * request
};

struct ClusterSnapshot {
  std::int64_t time = 0;
  std::vector<ServiceSample> services;
};

struct RunOptions {
  KnowledgeBase* kb = nullptr;  // run must already be registered
  std::string run_id;
};

struct RunResult {
  std::vector<ClusterSnapshot> snapshots;
  std::uint64_t reconciles = 0;
  std::uint64_t arm_invocations = 0;
};

RunResult run_scenario(const Scenario& scenario, AutoscalerKind autoscaler,
                       const RunOptions& options = {});

}  // namespace hpalab

#endif  // HPALAB_SIMULATOR_HPP
