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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

namespace hpalab {
namespace {

ServiceSample sample(const std::string& name, std::int64_t supply,
                     std::int64_t demand, std::int64_t capacity,
                     double cmv = 10.0, double tmv = 50.0) {
  ServiceSample s;
  s.name = name;
  s.cmv = cmv;
  s.tmv = tmv;
  s.request_m = 100;
  s.supply = supply;
  s.demand = demand;
  s.capacity = capacity;
  return s;
}

std::vector<ClusterSnapshot> constant_series(int n) {
  std::vector<ClusterSnapshot> out;
  for (int t = 0; t < n; ++t) {
    out.push_back({t, {sample("a", 300, 300, 300), sample("b", 100, 100, 100)}});
  }
  return out;
}

TEST(Metrics, ConstantBalancedSeries) {
  const auto r = compute_report(constant_series(60), 1);
  EXPECT_DOUBLE_EQ(r.app.supply_cpu, 400.0);
  EXPECT_DOUBLE_EQ(r.app.cpu_overprovision, 0.0);
  EXPECT_DOUBLE_EQ(r.app.cpu_underprovision, 0.0);
  EXPECT_DOUBLE_EQ(r.app.underprovision_time, 0.0);
  EXPECT_DOUBLE_EQ(r.app.overutilization_time, 0.0);
  EXPECT_DOUBLE_EQ(r.app.cpu_overutilization, 0.0);
  EXPECT_DOUBLE_EQ(r.app.overprovision_time, 1.0);
  EXPECT_DOUBLE_EQ(r.total_time, 1.0);
  EXPECT_EQ(r.samples, 60);
}

TEST(Metrics, TwoSampleExample) {
  const std::vector<ClusterSnapshot> s = {
      {0, {sample("a", 500, 700, 500, 140.0)}},
      {1, {sample("a", 500, 500, 500, 100.0)}},
  };
  const auto r = compute_report(s, 1);
  EXPECT_DOUBLE_EQ(r.app.cpu_underprovision, 100.0);
  EXPECT_DOUBLE_EQ(r.app.cpu_overprovision, 0.0);
  EXPECT_DOUBLE_EQ(r.app.underprovision_time, r.total_time / 2);
  EXPECT_DOUBLE_EQ(r.app.overprovision_time, r.total_time / 2);
  EXPECT_DOUBLE_EQ(r.app.cpu_overutilization, 120.0);
  EXPECT_DOUBLE_EQ(r.app.overutilization_time, r.total_time);
  EXPECT_DOUBLE_EQ(r.app.supply_cpu, 500.0);
}

TEST(Metrics, SamplePeriodScalesTimes) {
  std::vector<ClusterSnapshot> s;
  for (int k = 0; k < 4; ++k) {
    s.push_back({k * 15, {sample("a", 100, 200, 100)}});
  }
  const auto r = compute_report(s, 15);
  EXPECT_DOUBLE_EQ(r.total_time, 1.0);
  EXPECT_DOUBLE_EQ(r.app.underprovision_time, 1.0);
}

TEST(Metrics, RejectsBadSeries) {
  EXPECT_THROW(compute_report({}, 1), DomainError);
  std::vector<ClusterSnapshot> s = constant_series(3);
  s[2].time = 5;
  EXPECT_THROW(compute_report(s, 1), DomainError);
  EXPECT_THROW(compute_report(constant_series(3), 0), DomainError);
}

TEST(Metrics, AppUnderprovisionCountsAnyService) {
  const std::vector<ClusterSnapshot> s = {
      {0, {sample("a", 100, 200, 100), sample("b", 100, 0, 400)}},
  };
  const auto r = compute_report(s, 1);
  EXPECT_DOUBLE_EQ(r.app.cpu_underprovision, 100.0);
  EXPECT_DOUBLE_EQ(r.app.cpu_overprovision, 400.0);
  EXPECT_DOUBLE_EQ(r.app.underprovision_time, r.total_time);
  EXPECT_DOUBLE_EQ(r.per_service.at("b").underprovision_time, 0.0);
  EXPECT_DOUBLE_EQ(r.per_service.at("a").cpu_underprovision, 100.0);
}

std::vector<ClusterSnapshot> random_series(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> m(0, 30);
  std::uniform_real_distribution<double> u(0.0, 200.0);
  std::vector<ClusterSnapshot> out;
  for (int t = 0; t < 120; ++t) {
    ClusterSnapshot snap{t, {}};
    for (int i = 0; i < 5; ++i) {
      snap.services.push_back(sample("s" + std::to_string(i), m(rng) * 100,
                                     m(rng) * 100, m(rng) * 100, u(rng)));
    }
    out.push_back(std::move(snap));
  }
  return out;
}

TEST(MetricsProperty, OverAndUnderprovisionTimePartitionTheRun) {
  std::mt19937_64 rng(8);
  for (int k = 0; k < 50; ++k) {
    const auto r = compute_report(random_series(rng), 1);
    ASSERT_DOUBLE_EQ(r.app.overprovision_time + r.app.underprovision_time,
                     r.total_time);
    for (const auto& [_, m] : r.per_service) {
      ASSERT_DOUBLE_EQ(m.overprovision_time + m.underprovision_time,
                       r.total_time);
    }
  }
}

TEST(MetricsProperty, ScalingResourcesScalesCpuMetricsOnly) {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 20; ++k) {
    const auto series = random_series(rng);
    auto scaled = series;
    for (auto& snap : scaled) {
      for (auto& s : snap.services) {
        s.supply *= 3;
        s.demand *= 3;
        s.capacity *= 3;
      }
    }
    const auto a = compute_report(series, 1).app;
    const auto b = compute_report(scaled, 1).app;
    ASSERT_NEAR(b.supply_cpu, 3 * a.supply_cpu, 1e-6);
    ASSERT_NEAR(b.cpu_overprovision, 3 * a.cpu_overprovision, 1e-6);
    ASSERT_NEAR(b.cpu_underprovision, 3 * a.cpu_underprovision, 1e-6);
    ASSERT_DOUBLE_EQ(b.underprovision_time, a.underprovision_time);
    ASSERT_DOUBLE_EQ(b.overprovision_time, a.overprovision_time);
    ASSERT_DOUBLE_EQ(b.overutilization_time, a.overutilization_time);
    ASSERT_DOUBLE_EQ(b.cpu_overutilization, a.cpu_overutilization);
  }
}

TEST(MetricsProperty, ServiceOrderDoesNotMatter) {
  std::mt19937_64 rng(10);
  for (int k = 0; k < 20; ++k) {
    const auto series = random_series(rng);
    auto shuffled = series;
    for (auto& snap : shuffled) {
      std::shuffle(snap.services.begin(), snap.services.end(), rng);
    }
    const auto a = compute_report(series, 1).app;
    const auto b = compute_report(shuffled, 1).app;
    for (const auto& info : metric_table()) {
      ASSERT_NEAR(a.*info.field, b.*info.field, 1e-9) << info.key;
    }
  }
}

TEST(MetricsProperty, IdleServiceChangesNothing) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 20; ++k) {
    const auto series = random_series(rng);
    auto padded = series;
    for (auto& snap : padded) {
      snap.services.push_back(sample("idle", 0, 0, 0, 0.0));
    }
    const auto a = compute_report(series, 1).app;
    const auto b = compute_report(padded, 1).app;
    for (const auto& info : metric_table()) {
      ASSERT_NEAR(a.*info.field, b.*info.field, 1e-9) << info.key;
    }
  }
}

TEST(MetricsProperty, NonNegative) {
  std::mt19937_64 rng(12);
  for (int k = 0; k < 20; ++k) {
    const auto r = compute_report(random_series(rng), 1);
    for (const auto& info : metric_table()) {
      ASSERT_GE(r.app.*info.field, 0.0) << info.key;
    }
    ASSERT_LE(r.app.underprovision_time, r.total_time);
    ASSERT_LE(r.app.overutilization_time, r.total_time);
  }
}

TEST(MetricTable, KeysAndDirections) {
  const auto& t = metric_table();
  std::set<std::string_view> keys;
  for (const auto& m : t) keys.insert(m.key);
  EXPECT_EQ(keys.size(), 7u);
  EXPECT_EQ(t[0].key, "supply_cpu");
  EXPECT_EQ(t[0].better, Better::Higher);
  EXPECT_EQ(t[4].key, "overprovision_time");
  EXPECT_EQ(t[4].better, Better::Higher);
  EXPECT_EQ(t[5].key, "cpu_underprovision");
  EXPECT_EQ(t[5].better, Better::Lower);
}

}  // namespace
}  // namespace hpalab
