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

#include "hpalab/baseline.hpp"

#include <algorithm>
#include <cmath>

#include "hpalab/manager.hpp"

namespace hpalab {

namespace {

ScaleAction direction(Replicas cr, Replicas target) {
  if (target > cr) return ScaleAction::ScaleUp;
  if (target < cr) return ScaleAction::ScaleDown;
  return ScaleAction::NoScale;
}

Replicas clamped_recommendation(const PodMetrics& pod, const SlaMetrics& sla,
                                const BaselineOptions& options) {
  Replicas raw = threshold_desired_replicas(pod, sla);
  if (options.tolerance > 0.0 &&
      std::fabs(pod.cmv / sla.tmv - 1.0) <= options.tolerance) {
    raw = pod.cr;
  }
  return std::clamp(raw, sla.min_r, sla.max_r);
}

}  // namespace

ResourcePlan baseline_plan(const std::string& name, const PodMetrics& pod,
                           const SlaMetrics& sla,
                           const BaselineOptions& options) {
  const Replicas target = clamped_recommendation(pod, sla, options);
  return ResourcePlan{name, direction(pod.cr, target), target, sla.max_r};
}

ResourcePlan BaselineAutoscaler::plan(const std::string& name,
                                      const PodMetrics& pod,
                                      const SlaMetrics& sla,
                                      std::int64_t now_s) {
  Replicas target = clamped_recommendation(pod, sla, options_);
  if (options_.stabilization_window_s > 0) {
    auto& hist = history_[name];
    hist.emplace_back(now_s, target);
    while (!hist.empty() &&
           hist.front().first <= now_s - options_.stabilization_window_s) {
      hist.pop_front();
    }
    if (target < pod.cr) {
      for (const auto& [t, rec] : hist) target = std::max(target, rec);
      target = std::min(target, pod.cr);
    }
  }
  return ResourcePlan{name, direction(pod.cr, target), target, sla.max_r};
}

}  // namespace hpalab
