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

#include "hpalab/manager.hpp"

#include <cmath>

namespace hpalab {

Replicas threshold_desired_replicas(const PodMetrics& pod,
                                    const SlaMetrics& sla) {
  if (!(sla.tmv > 0.0)) throw DomainError("threshold must be > 0");
  if (pod.cr <= 0) return 0;
  const double raw =
      static_cast<double>(pod.cr) * (pod.cmv / sla.tmv);
  return static_cast<Replicas>(std::ceil(snap_to_integer(raw)));
}

ScaleAction plan_scaling(Replicas cr, Replicas dr, Replicas min_r) {
  if (dr > cr) return ScaleAction::ScaleUp;
  if (dr < cr && dr >= min_r) return ScaleAction::ScaleDown;
  return ScaleAction::NoScale;
}

ManagerVerdict manage(const MicroserviceSpec& spec, const PodMetrics& pod,
                      const SlaMetrics& sla, const ScalingPolicy& policy,
                      const KbSink& sink) {
  pod.validate(spec);
  // max_r is not checked against min_r: the exchange may lower it.
  if (!(sla.tmv > 0.0 && sla.tmv <= 100.0)) {
    throw DomainError(spec.name + ": threshold must be in (0, 100]");
  }
  const Replicas dr = policy.desired_replicas(pod, sla);
  const ScaleAction sd = plan_scaling(pod.cr, dr, sla.min_r);
  if (sink.kb != nullptr) {
    sink.kb->append(KbEvent{
        sink.run_id, sink.tick,
        VerdictRecord{spec.name, dr, sd, pod.cmv, sla.tmv, pod.cr, sla.min_r,
                      sla.max_r}});
  }
  return ManagerVerdict{spec.name, dr, sd, sla.max_r};
}

}  // namespace hpalab
