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

#include "hpalab/metrics.hpp"

#include <algorithm>

namespace hpalab {

namespace {

struct Accumulator {
  double supply = 0.0;
  double over_prov = 0.0;
  double under_prov = 0.0;
  double over_util_sum = 0.0;
  std::int64_t over_util_samples = 0;
  std::int64_t under_ticks = 0;
  std::int64_t over_util_ticks = 0;

  MetricSet finish(std::int64_t samples, double minutes_per_sample) const {
    const auto n = static_cast<double>(samples);
    MetricSet m;
    m.supply_cpu = supply / n;
    m.cpu_overprovision = over_prov / n;
    m.cpu_underprovision = under_prov / n;
    m.cpu_overutilization =
        over_util_samples == 0
            ? 0.0
            : over_util_sum / static_cast<double>(over_util_samples);
    m.underprovision_time =
        static_cast<double>(under_ticks) * minutes_per_sample;
    m.overprovision_time =
        static_cast<double>(samples - under_ticks) * minutes_per_sample;
    m.overutilization_time =
        static_cast<double>(over_util_ticks) * minutes_per_sample;
    return m;
  }
};

}  // namespace

ScenarioReport compute_report(std::span<const ClusterSnapshot> snapshots,
                              std::int64_t sample_period_s) {
  if (snapshots.empty()) throw DomainError("empty snapshot series");
  if (sample_period_s <= 0) throw DomainError("sample period must be > 0");
  for (std::size_t k = 1; k < snapshots.size(); ++k) {
    if (snapshots[k].time - snapshots[k - 1].time != sample_period_s) {
      throw DomainError("snapshot series is not uniformly sampled");
    }
  }

  Accumulator app;
  std::map<std::string, Accumulator> per;
  for (const auto& snap : snapshots) {
    bool any_under = false;
    bool any_over_util = false;
    for (const auto& s : snap.services) {
      Accumulator& acc = per[s.name];
      const auto supply = static_cast<double>(s.supply);
      const auto gap = static_cast<double>(s.demand - s.capacity);
      acc.supply += supply;
      app.supply += supply;
      if (gap > 0) {
        acc.under_prov += gap;
        app.under_prov += gap;
        ++acc.under_ticks;
        any_under = true;
      } else {
        acc.over_prov -= gap;
        app.over_prov -= gap;
      }
      if (s.cmv > s.tmv) {
        acc.over_util_sum += s.cmv;
        ++acc.over_util_samples;
        ++acc.over_util_ticks;
        app.over_util_sum += s.cmv;
        ++app.over_util_samples;
        any_over_util = true;
      }
    }
    if (any_under) ++app.under_ticks;
    if (any_over_util) ++app.over_util_ticks;
  }

  const auto samples = static_cast<std::int64_t>(snapshots.size());
  const double minutes_per_sample = static_cast<double>(sample_period_s) / 60.0;
  ScenarioReport report;
  report.samples = samples;
  report.total_time = static_cast<double>(samples) * minutes_per_sample;
  report.app = app.finish(samples, minutes_per_sample);
  for (const auto& [name, acc] : per) {
    report.per_service[name] = acc.finish(samples, minutes_per_sample);
  }
  return report;
}

const std::array<MetricInfo, 7>& metric_table() {
  static const std::array<MetricInfo, 7> table{{
      {"supply_cpu", &MetricSet::supply_cpu, Better::Higher},
      {"cpu_overutilization", &MetricSet::cpu_overutilization, Better::Lower},
      {"overutilization_time", &MetricSet::overutilization_time,
       Better::Lower},
      {"cpu_overprovision", &MetricSet::cpu_overprovision, Better::Lower},
      {"overprovision_time", &MetricSet::overprovision_time, Better::Higher},
      {"cpu_underprovision", &MetricSet::cpu_underprovision, Better::Lower},
      {"underprovision_time", &MetricSet::underprovision_time, Better::Lower},
  }};
  return table;
}

}  // namespace hpalab
