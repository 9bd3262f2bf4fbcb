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

#include "hpalab/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <iostream>
#include <random>
#include <set>

#include "hpalab/capacity_analyzer.hpp"
#include "hpalab/manager.hpp"

namespace hpalab {

void LoadProfile::validate() const {
  if (total_duration_s <= 0) throw DomainError("total_duration must be > 0");
  if (ramp_duration_s < 0 || ramp_duration_s > total_duration_s) {
    throw DomainError("ramp_duration must be within [0, total_duration]");
  }
  if (peak_users < 0) throw DomainError("peak_users must be >= 0");
  if (spawn_rate < 0.0) throw DomainError("spawn_rate must be >= 0");
  if (static_cast<double>(peak_users) >
      spawn_rate * static_cast<double>(ramp_duration_s)) {
    throw DomainError("peak_users must be reachable within the ramp");
  }
}

std::int64_t users_at(const LoadProfile& profile, std::int64_t t) {
  if (t < 0 || t > profile.total_duration_s) {
    throw DomainError("time " + std::to_string(t) + "s outside the run");
  }
  if (t >= profile.ramp_duration_s) return profile.peak_users;
  const auto ramped = static_cast<std::int64_t>(
      std::floor(static_cast<double>(t) * profile.spawn_rate));
  return std::min(profile.peak_users, ramped);
}

MilliCpu service_demand(const DemandModel& model, const std::string& service,
                        std::int64_t users) {
  if (users < 0) throw DomainError("user count must be >= 0");
  auto it = model.find(service);
  if (it == model.end()) {
    throw DomainError("no demand coefficients for '" + service + "'");
  }
  const double m =
      it->second.base_m + it->second.per_user_m * static_cast<double>(users);
  return milli(static_cast<std::int64_t>(std::llround(m)));
}

double utilization(MilliCpu demand, Replicas cr, const MicroserviceSpec& spec) {
  if (cr <= 0) {
    if (demand.count() > 0) {
      std::cerr << "warning: " << spec.name
                << " has demand but no replicas; reporting 0% utilization\n";
    }
    return 0.0;
  }
  const double per_replica =
      std::min(static_cast<double>(demand.count()) / static_cast<double>(cr),
               static_cast<double>(spec.cpu_limit.count()));
  return 100.0 * per_replica / static_cast<double>(spec.cpu_request.count());
}

void Scenario::validate() const {
  if (services.empty()) throw DomainError(id + ": no services configured");
  std::set<std::string> names;
  for (const auto& s : services) {
    s.spec.validate();
    if (!names.insert(s.spec.name).second) {
      throw DomainError(id + ": duplicate service '" + s.spec.name + "'");
    }
    s.sla.validate();
    if (s.initial_cr < s.sla.min_r || s.initial_cr > s.sla.max_r) {
      throw DomainError(id + ": " + s.spec.name +
                        " initial replicas must lie in [min_r, max_r]");
    }
    if (s.demand.base_m < 0.0 || s.demand.per_user_m < 0.0) {
      throw DomainError(id + ": " + s.spec.name +
                        " demand coefficients must be >= 0");
    }
  }
  load.validate();
  const auto positive_multiple = [&](std::int64_t v, const char* what) {
    if (v < timing.tick_s || v % timing.tick_s != 0) {
      throw DomainError(id + ": " + what + " must be a positive multiple of tick");
    }
  };
  if (timing.tick_s < 1) throw DomainError(id + ": tick must be >= 1s");
  positive_multiple(timing.reconcile_period_s, "reconcile_period");
  positive_multiple(timing.sample_period_s, "sample_period");
  if (timing.startup_delay_s < 0 || timing.cmv_window_s < 0) {
    throw DomainError(id + ": startup_delay and cmv_window must be >= 0");
  }
  if (demand_jitter < 0.0 || demand_jitter >= 1.0) {
    throw DomainError(id + ": demand_jitter must be in [0, 1)");
  }
  if (baseline.tolerance < 0.0 || baseline.stabilization_window_s < 0) {
    throw DomainError(id + ": baseline knobs must be >= 0");
  }
}

SpecMap Scenario::specs() const {
  SpecMap out;
  for (const auto& s : services) out.emplace(s.spec.name, s.spec);
  return out;
}

DemandModel Scenario::demand_model() const {
  DemandModel out;
  for (const auto& s : services) out.emplace(s.spec.name, s.demand);
  return out;
}

std::string scenario_id(Replicas max_r, double threshold) {
  const double rounded = std::round(threshold);
  std::string pct = std::fabs(threshold - rounded) < 1e-9
                        ? std::to_string(static_cast<long long>(rounded))
                        : format_2dp(threshold);
  return std::to_string(max_r) + "R-" + pct + "%";
}

std::string_view to_string(AutoscalerKind k) {
  return k == AutoscalerKind::Smart ? "smart" : "baseline";
}

AutoscalerKind parse_autoscaler(std::string_view text) {
  if (text == "smart") return AutoscalerKind::Smart;
  if (text == "baseline") return AutoscalerKind::Baseline;
  throw DomainError("unknown autoscaler '" + std::string(text) + "'");
}

Replicas ServiceState::pending_total() const {
  Replicas n = 0;
  for (const auto& p : pending) n += p.count;
  return n;
}

ServiceState& ClusterState::at(const std::string& name) {
  for (auto& s : services) {
    if (s.spec.name == name) return s;
  }
  throw DomainError("unknown service '" + name + "'");
}

const ServiceState& ClusterState::at(const std::string& name) const {
  return const_cast<ClusterState&>(*this).at(name);
}

ClusterState initial_state(const Scenario& scenario) {
  ClusterState state;
  for (const auto& s : scenario.services) {
    state.services.push_back(
        ServiceState{s.spec, s.sla, s.sla.max_r, s.initial_cr, {}});
  }
  return state;
}

void promote_ready(ClusterState& state, std::int64_t now) {
  state.time = now;
  for (auto& s : state.services) {
    auto ready = std::stable_partition(
        s.pending.begin(), s.pending.end(),
        [now](const PendingReplicas& p) { return p.ready_at > now; });
    for (auto it = ready; it != s.pending.end(); ++it) s.cr += it->count;
    s.pending.erase(ready, s.pending.end());
  }
}

namespace {

void move_towards(ServiceState& s, Replicas target, std::int64_t now,
                  std::int64_t startup_delay_s) {
  const Replicas scheduled = s.cr + s.pending_total();
  if (target > scheduled) {
    s.pending.push_back(
        PendingReplicas{target - scheduled, now + std::max<std::int64_t>(
                                                      startup_delay_s, 1)});
  } else if (target < s.cr) {
    s.pending.clear();
    s.cr = std::max<Replicas>(target, 0);
  } else if (target < scheduled) {
    // Trim queued replicas that are no longer wanted.
    Replicas excess = scheduled - target;
    while (excess > 0 && !s.pending.empty()) {
      auto& last = s.pending.back();
      const Replicas take = std::min(excess, last.count);
      last.count -= take;
      excess -= take;
      if (last.count == 0) s.pending.pop_back();
    }
  }
}

}  // namespace

ClusterState apply_plans(ClusterState state, std::span<const ResourcePlan> plans,
                         const ExecutorOptions& options) {
  for (const auto& plan : plans) {
    ServiceState& s = state.at(plan.name);
    switch (plan.res_sd) {
      case ScaleAction::ScaleUp:
      case ScaleAction::ScaleDown:
        move_towards(s, plan.res_dr, state.time, options.startup_delay_s);
        break;
      case ScaleAction::NoScale:
        if (options.apply_res_dr_on_noscale) {
          move_towards(s, plan.res_dr, state.time, options.startup_delay_s);
        }
        break;
    }
    s.sla.max_r = plan.updated_max_r;
  }
  return state;
}

namespace {

struct LastDecision {
  Replicas dr = 0;
  ScaleAction sd = ScaleAction::NoScale;
  ScaleAction res_sd = ScaleAction::NoScale;
  Replicas res_dr = 0;
};

class CmvWindow {
 public:
  explicit CmvWindow(std::size_t width) : width_(width) {}

  double push(double cmv) {
    if (width_ <= 1) return cmv;
    values_.push_back(cmv);
    sum_ += cmv;
    if (values_.size() > width_) {
      sum_ -= values_.front();
      values_.pop_front();
    }
    return sum_ / static_cast<double>(values_.size());
  }

 private:
  std::size_t width_;
  std::deque<double> values_;
  double sum_ = 0.0;
};

}  // namespace

RunResult run_scenario(const Scenario& scenario, AutoscalerKind autoscaler,
                       const RunOptions& options) {
  scenario.validate();
  const Timing& timing = scenario.timing;
  const DemandModel demand = scenario.demand_model();
  const SpecMap specs = scenario.specs();
  const std::size_t n = scenario.services.size();

  ClusterState state = initial_state(scenario);
  AdaptiveResourceManager arm(
      ArmOptions{scenario.flags.strict_conservation});
  BaselineAutoscaler baseline(scenario.baseline);
  const ThresholdPolicy policy;
  const ExecutorOptions executor{timing.startup_delay_s,
                                 scenario.flags.apply_res_dr_on_noscale};

  std::mt19937_64 rng(scenario.seed);
  std::uniform_real_distribution<double> jitter(-1.0, 1.0);

  std::vector<CmvWindow> windows;
  const auto window_width = static_cast<std::size_t>(
      timing.cmv_window_s / timing.tick_s);
  for (std::size_t i = 0; i < n; ++i) windows.emplace_back(window_width);

  std::vector<LastDecision> last(n);
  std::vector<double> cmv(n, 0.0);
  std::vector<std::int64_t> load(n, 0);

  RunResult result;
  result.snapshots.reserve(static_cast<std::size_t>(
      scenario.load.total_duration_s / timing.sample_period_s + 1));

  for (std::int64_t t = 0; t < scenario.load.total_duration_s;
       t += timing.tick_s) {
    promote_ready(state, t);
    const std::int64_t users = users_at(scenario.load, t);

    for (std::size_t i = 0; i < n; ++i) {
      const ServiceState& s = state.services[i];
      std::int64_t m = service_demand(demand, s.spec.name, users).count();
      if (scenario.demand_jitter > 0.0) {
        const double factor = 1.0 + scenario.demand_jitter * jitter(rng);
        m = std::llround(static_cast<double>(m) * factor);
      }
      load[i] = m;
      cmv[i] = windows[i].push(utilization(milli(m), s.cr, s.spec));
    }

    if (t % timing.reconcile_period_s == 0) {
      ++result.reconciles;
      const KbSink sink{options.kb, options.run_id, t};
      if (scenario.flags.reset_max_r_each_tick) {
        for (auto& s : state.services) s.sla.max_r = s.configured_max_r;
      }

      std::vector<ResourcePlan> plans;
      if (autoscaler == AutoscalerKind::Smart) {
        std::vector<ManagerVerdict> verdicts;
        verdicts.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
          const ServiceState& s = state.services[i];
          verdicts.push_back(
              manage(s.spec, PodMetrics{cmv[i], s.cr}, s.sla, policy, sink));
          last[i].dr = verdicts.back().dr;
          last[i].sd = verdicts.back().sd;
        }
        auto outcome = analyze(verdicts);
        if (auto* ok = std::get_if<AllFeasible>(&outcome)) {
          plans = std::move(ok->plans);
          if (options.kb != nullptr) {
            for (const auto& p : plans) {
              options.kb->append(
                  KbEvent{options.run_id, t, PlanRecord{p, "analyzer"}});
            }
          }
        } else {
          plans = arm.run(std::get<Infeasible>(outcome).verdicts, specs, sink)
                      .plans;
        }
      } else {
        for (std::size_t i = 0; i < n; ++i) {
          const ServiceState& s = state.services[i];
          const PodMetrics pod{cmv[i], s.cr};
          // Recorded like a manager verdict so demand is measured the same
          // way for both autoscalers: raw desired replicas, before clamping.
          const ManagerVerdict v = manage(s.spec, pod, s.sla, policy, sink);
          last[i].dr = v.dr;
          last[i].sd = v.sd;
          plans.push_back(baseline.plan(s.spec.name, pod, s.sla, t));
          if (options.kb != nullptr) {
            options.kb->append(
                KbEvent{options.run_id, t, PlanRecord{plans.back(), "baseline"}});
          }
        }
      }

      for (std::size_t i = 0; i < n; ++i) {
        last[i].res_sd = plans[i].res_sd;
        last[i].res_dr = plans[i].res_dr;
      }
      state = apply_plans(std::move(state), plans, executor);
    }

    if (t % timing.sample_period_s == 0) {
      ClusterSnapshot snap{t, {}};
      snap.services.reserve(n);
      for (std::size_t i = 0; i < n; ++i) {
        const ServiceState& s = state.services[i];
        const std::int64_t req = s.spec.cpu_request.count();
        ServiceSample sample{s.spec.name,     cmv[i],         s.sla.tmv,
                             s.cr,            last[i].dr,     s.sla.max_r,
                             req,             last[i].sd,     last[i].res_sd,
                             last[i].res_dr,  load[i],        s.cr * req,
                             last[i].dr * req, s.sla.max_r * req};
        if (options.kb != nullptr) {
          options.kb->append(KbEvent{
              options.run_id, t,
              SnapshotRecord{sample.name, sample.cmv, sample.cr, sample.dr,
                             sample.max_r, sample.sd, sample.res_sd,
                             sample.res_dr, sample.supply, sample.demand,
                             sample.capacity}});
        }
        snap.services.push_back(std::move(sample));
      }
      result.snapshots.push_back(std::move(snap));
    }
  }
  result.arm_invocations = arm.invocations();
  return result;
}

}  // namespace hpalab
