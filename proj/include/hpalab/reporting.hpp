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

#ifndef HPALAB_REPORTING_HPP
#define HPALAB_REPORTING_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hpalab/metrics.hpp"

namespace hpalab {

class ReportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunMetadata {
  std::string scenario;
  std::string autoscaler;
  std::uint64_t seed = 0;
  double threshold = 0.0;
  Replicas max_r = 0;
  std::uint64_t arm_invocations = 0;
};

struct StoredReport {
  RunMetadata meta;
  ScenarioReport report;
};

// Pretty-printed JSON with every figure rounded to two decimals.
std::string report_to_json(const RunMetadata& meta,
                           const ScenarioReport& report);
StoredReport report_from_json(std::string_view text);

// ---- comparison ---------------------------------------------------------

struct ComparisonRow {
  std::string scenario;
  std::string metric;
  double smart = 0.0;
  double baseline = 0.0;
  std::optional<double> ratio;  // smart / baseline; empty when undefined
  Better better = Better::Lower;
};

struct Comparison {
  std::vector<ComparisonRow> rows;
};

// Pairs reports by scenario id. Throws ReportError when a scenario lacks
// either side or the two sides cover different scenarios.
Comparison compare_reports(const std::vector<StoredReport>& reports);

// Reads <dir>/<scenario>/<autoscaler>/report.json.
std::vector<StoredReport> load_reports(const std::filesystem::path& dir);

std::string comparison_text(const Comparison& cmp);
std::string comparison_csv(const Comparison& cmp);

// ---- plotting -----------------------------------------------------------

enum class PlotKind { Capacity, Utilization };

PlotKind parse_plot_kind(std::string_view text);
std::string_view to_string(PlotKind k);

struct EventRow {
  std::int64_t time = 0;
  std::string service;
  double cmv = 0.0;
  Replicas cr = 0;
  Replicas dr = 0;
  Replicas max_r = 0;
  std::string sd;
  std::string res_sd;
  Replicas res_dr = 0;
  std::int64_t supply = 0;
  std::int64_t demand = 0;
  std::int64_t capacity = 0;
};

// Parses an events.csv export. Throws ReportError on an empty file or a
// header that is not the documented column list.
std::vector<EventRow> parse_events_csv(std::string_view text);

// Whitespace-separated table, one row per time step: for Capacity the
// columns are <svc>_demand <svc>_capacity per service, for Utilization
// <svc>_cmv per service plus the threshold when known.
std::string plot_data(const std::vector<EventRow>& rows, PlotKind kind,
                      std::optional<double> threshold);

// Line chart of the same series.
std::string plot_svg(const std::vector<EventRow>& rows, PlotKind kind,
                     std::optional<double> threshold);

}  // namespace hpalab

#endif  // HPALAB_REPORTING_HPP
