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

#ifndef HPALAB_BASELINE_HPP
#define HPALAB_BASELINE_HPP

#include <cstdint>
#include <deque>
#include <map>
#include <string>
#include <utility>

#include "hpalab/core.hpp"

namespace hpalab {

// Both knobs default to off so the comparison with the exchange-based
// autoscaler is policy for policy.
struct BaselineOptions {
  // Skip scaling when |cmv/tmv - 1| <= tolerance.
  double tolerance = 0.0;
  // Scale down to the highest recommendation seen in this many seconds.
  std::int64_t stabilization_window_s = 0;
};

// Kubernetes-style plan: threshold formula clamped to [min_r, max_r],
// capacity never changes.
ResourcePlan baseline_plan(const std::string& name, const PodMetrics& pod,
                           const SlaMetrics& sla,
                           const BaselineOptions& options = {});

// Stateful wrapper that implements the stabilization window.
class BaselineAutoscaler {
 public:
  explicit BaselineAutoscaler(BaselineOptions options = {})
      : options_(options) {}

  ResourcePlan plan(const std::string& name, const PodMetrics& pod,
                    const SlaMetrics& sla, std::int64_t now_s);

 private:
  BaselineOptions options_;
  std::map<std::string, std::deque<std::pair<std::int64_t, Replicas>>>
      history_;
};

}  // namespace hpalab

#endif  // HPALAB_BASELINE_HPP
