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

#ifndef HPALAB_METRICS_HPP
#define HPALAB_METRICS_HPP

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include "hpalab/simulator.hpp"

namespace hpalab {

// The seven evaluation metrics. Demand is dr * request and capacity is
// max_r * request at each sample; milliCPU figures are time averages,
// times are in minutes.
struct MetricSet {
  double supply_cpu = 0.0;
  double cpu_overutilization = 0.0;  // mean CMV over samples above threshold
  double overutilization_time = 0.0;
  double cpu_overprovision = 0.0;
  double overprovision_time = 0.0;
  double cpu_underprovision = 0.0;
  double underprovision_time = 0.0;
};

struct ScenarioReport {
  MetricSet app;
  std::map<std::string, MetricSet> per_service;
  double total_time = 0.0;  // minutes
  std::int64_t samples = 0;
};

// Throws DomainError for an empty or non-uniformly sampled series.
ScenarioReport compute_report(std::span<const ClusterSnapshot> snapshots,
                              std::int64_t sample_period_s);

enum class Better { Lower, Higher };

struct MetricInfo {
  std::string_view key;
  double MetricSet::*field;
  Better better;
};

// Report order of the seven metrics.
const std::array<MetricInfo, 7>& metric_table();

}  // namespace hpalab

#endif  // HPALAB_METRICS_HPP
