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

#ifndef HPALAB_MANAGER_HPP
#define HPALAB_MANAGER_HPP

#include <cstdint>
#include <string>

#include "hpalab/core.hpp"
#include "hpalab/knowledge_base.hpp"

namespace hpalab {

// Analyze step of a per-microservice manager. Implementations must be
// pure: identical inputs give identical desired replica counts.
class ScalingPolicy {
 public:
  virtual ~ScalingPolicy() = default;
  virtual Replicas desired_replicas(const PodMetrics& pod,
                                    const SlaMetrics& sla) const = 0;
};

// ceil(cr * cmv / tmv), unclamped.
Replicas threshold_desired_replicas(const PodMetrics& pod,
                                    const SlaMetrics& sla);

class ThresholdPolicy final : public ScalingPolicy {
 public:
  Replicas desired_replicas(const PodMetrics& pod,
                            const SlaMetrics& sla) const override {
    return threshold_desired_replicas(pod, sla);
  }
};

// ScaleUp when dr > cr, ScaleDown when cr > dr >= min_r, NoScale
// otherwise (a desired count below min_r is not acted on).
ScaleAction plan_scaling(Replicas cr, Replicas dr, Replicas min_r);

// Where a manager writes its verdict. A null kb skips recording.
struct KbSink {
  KnowledgeBase* kb = nullptr;
  std::string run_id;
  std::int64_t tick = 0;
};

// One Monitor/Analyze/Plan round for a single microservice. The
// returned verdict carries the raw desired count; clamping against
// max_r is left to the capacity analyzer. Throws DomainError on a pod
// reading the service cannot produce or a threshold outside (0, 100].
ManagerVerdict manage(const MicroserviceSpec& spec, const PodMetrics& pod,
                      const SlaMetrics& sla, const ScalingPolicy& policy,
                      const KbSink& sink = {});

}  // namespace hpalab

#endif  // HPALAB_MANAGER_HPP
