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

#include "hpalab/core.hpp"

#include <cmath>
#include <cstdio>

namespace hpalab {

MilliCpu MilliCpu::of(std::int64_t millicores) {
  if (millicores < 0) {
    throw DomainError("milliCPU quantity must be non-negative, got " +
                      std::to_string(millicores));
  }
  return MilliCpu(millicores);
}

MilliCpu milli(std::int64_t value) { return MilliCpu::of(value); }

std::string to_string(MilliCpu m) { return std::to_string(m.count()) + "m"; }

std::string_view to_string(ScaleAction a) {
  switch (a) {
    case ScaleAction::ScaleUp:
      return "ScaleUp";
    case ScaleAction::ScaleDown:
      return "ScaleDown";
    case ScaleAction::NoScale:
      return "NoScale";
  }
  return "NoScale";
}

ScaleAction parse_scale_action(std::string_view text) {
  if (text == "ScaleUp") return ScaleAction::ScaleUp;
  if (text == "ScaleDown") return ScaleAction::ScaleDown;
  if (text == "NoScale") return ScaleAction::NoScale;
  throw DomainError("unknown scale action '" + std::string(text) + "'");
}

std::string_view to_string(ProvisionKind k) {
  return k == ProvisionKind::Under ? "Under" : "Over";
}

ProvisionKind parse_provision_kind(std::string_view text) {
  if (text == "Under") return ProvisionKind::Under;
  if (text == "Over") return ProvisionKind::Over;
  throw DomainError("unknown provision kind '" + std::string(text) + "'");
}

double MicroserviceSpec::max_utilization() const {
  return 100.0 * static_cast<double>(cpu_limit.count()) /
         static_cast<double>(cpu_request.count());
}

void MicroserviceSpec::validate() const {
  if (name.empty()) throw DomainError("microservice name must not be empty");
  if (cpu_request.count() <= 0) {
    throw DomainError(name + ": cpu_request must be > 0");
  }
  if (cpu_limit < cpu_request) {
    throw DomainError(name + ": cpu_limit must be >= cpu_request");
  }
}

MicroserviceSpec MicroserviceSpec::make(std::string name,
                                        std::int64_t request_m,
                                        std::int64_t limit_m) {
  MicroserviceSpec spec{std::move(name), milli(request_m), milli(limit_m)};
  spec.validate();
  return spec;
}

void PodMetrics::validate(const MicroserviceSpec& owner) const {
  if (cr < 0) throw DomainError(owner.name + ": replica count must be >= 0");
  if (!(cmv >= 0.0)) throw DomainError(owner.name + ": cmv must be >= 0");
  if (cmv > owner.max_utilization() + 1e-9) {
    throw DomainError(owner.name + ": cmv exceeds 100*limit/request");
  }
}

void SlaMetrics::validate() const {
  if (!(tmv > 0.0 && tmv <= 100.0)) {
    throw DomainError("threshold must be in (0, 100]");
  }
  if (min_r < 1) throw DomainError("min_r must be >= 1");
  if (max_r < min_r) throw DomainError("max_r must be >= min_r");
}

double snap_to_integer(double x) {
  const double r = std::round(x);
  return std::fabs(x - r) < 1e-9 ? r : x;
}

std::string format_2dp(double value) {
  char buf[64];
  const double rounded = std::round(value * 100.0) / 100.0;
  std::snprintf(buf, sizeof(buf), "%.2f", rounded == 0.0 ? 0.0 : rounded);
  return buf;
}

}  // namespace hpalab
