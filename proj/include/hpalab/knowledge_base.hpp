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

#ifndef HPALAB_KNOWLEDGE_BASE_HPP
#define HPALAB_KNOWLEDGE_BASE_HPP

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "hpalab/core.hpp"

namespace hpalab {

class KnowledgeBaseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Declaration order is the secondary sort key of the event log.
enum class EventKind { Verdict, ArmTrace, Plan, Snapshot };

std::string_view to_string(EventKind k);

struct VerdictRecord {
  std::string service;
  Replicas dr = 0;
  ScaleAction sd = ScaleAction::NoScale;
  double cmv = 0.0;
  double tmv = 0.0;
  Replicas cr = 0;
  Replicas min_r = 0;
  Replicas max_r = 0;
};

// One row of a balancer pass. `step` is the position in execution order
// (underprovisioned entries first, then overprovisioned), `pool_after`
// the residual pool once this row has been processed.
struct ArmTraceRecord {
  std::string service;
  std::int64_t step = 0;
  ProvisionKind kind = ProvisionKind::Over;
  Replicas dr = 0;
  Replicas max_r = 0;
  Replicas delta_r = 0;
  std::int64_t delta_res = 0;
  double total_r = 0.0;
  std::int64_t used_res = 0;
  Replicas feasible_r = 0;
  Replicas u_max_r = 0;
  std::int64_t pool_after = 0;
};

struct PlanRecord {
  ResourcePlan plan;
  std::string source;  // "analyzer", "arm" or "baseline"
};

struct SnapshotRecord {
  std::string service;
  double cmv = 0.0;
  Replicas cr = 0;
  Replicas dr = 0;
  Replicas max_r = 0;
  ScaleAction sd = ScaleAction::NoScale;
  ScaleAction res_sd = ScaleAction::NoScale;
  Replicas res_dr = 0;
  std::int64_t supply = 0;
  std::int64_t demand = 0;
  std::int64_t capacity = 0;
};

using EventPayload =
    std::variant<VerdictRecord, ArmTraceRecord, PlanRecord, SnapshotRecord>;

struct KbEvent {
  std::string run_id;
  std::int64_t tick = 0;
  EventPayload payload;

  EventKind kind() const;
  const std::string& service() const;
};

enum class ExportFormat { Csv, JsonLines };

// Column order of the CSV export.
inline constexpr const char* kCsvHeader =
    "time,service,cmv,cr,dr,max_r,sd,res_sd,res_dr,supply,demand,capacity";

std::string to_json_line(const KbEvent& event);

// Append-only event log. Events of a run are kept ordered by
// (tick, kind, service); appends with an equal key keep arrival order.
// All member functions are safe to call concurrently.
class KnowledgeBase {
 public:
  KnowledgeBase() = default;
  // Every accepted event is also written to `journal` as one JSON line.
  explicit KnowledgeBase(const std::filesystem::path& journal);

  KnowledgeBase(const KnowledgeBase&) = delete;
  KnowledgeBase& operator=(const KnowledgeBase&) = delete;

  void register_run(const std::string& run_id);
  void close_run(const std::string& run_id);
  bool has_run(const std::string& run_id) const;
  bool is_closed(const std::string& run_id) const;

  // Throws KnowledgeBaseError for unknown or closed runs.
  void append(KbEvent event);

  std::vector<KbEvent> events(const std::string& run_id) const;
  std::vector<KbEvent> query(const std::string& run_id,
                             std::int64_t tick) const;
  std::size_t size(const std::string& run_id) const;

  // Requires a closed run. The CSV export contains the snapshot rows;
  // JSON lines carry every event.
  std::string export_run(const std::string& run_id, ExportFormat format) const;

 private:
  struct Run {
    bool closed = false;
    std::vector<KbEvent> events;
  };

  const Run& find_run(const std::string& run_id) const;

  mutable std::mutex mu_;
  std::map<std::string, Run> runs_;
  std::unique_ptr<std::ofstream> journal_;
};

}  // namespace hpalab

#endif  // HPALAB_KNOWLEDGE_BASE_HPP
