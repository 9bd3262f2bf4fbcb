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

#include "hpalab/knowledge_base.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include <json.hpp>

namespace hpalab {

namespace {

using nlohmann::json;

json payload_json(const VerdictRecord& r) {
  return {{"service", r.service}, {"dr", r.dr},       {"sd", to_string(r.sd)},
          {"cmv", r.cmv},         {"tmv", r.tmv},     {"cr", r.cr},
          {"min_r", r.min_r},     {"max_r", r.max_r}};
}

json payload_json(const ArmTraceRecord& r) {
  return {{"service", r.service},
          {"step", r.step},
          {"provision", to_string(r.kind)},
          {"dr", r.dr},
          {"max_r", r.max_r},
          {"delta_r", r.delta_r},
          {"delta_res", r.delta_res},
          {"total_r", r.total_r},
          {"used_res", r.used_res},
          {"feasible_r", r.feasible_r},
          {"u_max_r", r.u_max_r},
          {"pool_after", r.pool_after}};
}

json payload_json(const PlanRecord& r) {
  return {{"service", r.plan.name},
          {"res_sd", to_string(r.plan.res_sd)},
          {"res_dr", r.plan.res_dr},
          {"updated_max_r", r.plan.updated_max_r},
          {"source", r.source}};
}

json payload_json(const SnapshotRecord& r) {
  return {{"service", r.service},   {"cmv", r.cmv},
          {"cr", r.cr},             {"dr", r.dr},
          {"max_r", r.max_r},       {"sd", to_string(r.sd)},
          {"res_sd", to_string(r.res_sd)}, {"res_dr", r.res_dr},
          {"supply", r.supply},     {"demand", r.demand},
          {"capacity", r.capacity}};
}

auto order_key(const KbEvent& e) {
  return std::make_tuple(e.tick, static_cast<int>(e.kind()),
                         std::cref(e.service()));
}

}  // namespace

std::string_view to_string(EventKind k) {
  switch (k) {
    case EventKind::Verdict:
      return "Verdict";
    case EventKind::ArmTrace:
      return "ArmTrace";
    case EventKind::Plan:
      return "Plan";
    case EventKind::Snapshot:
      return "Snapshot";
  }
  return "Snapshot";
}

EventKind KbEvent::kind() const {
  return static_cast<EventKind>(payload.index());
}

const std::string& KbEvent::service() const {
  return std::visit(
      [](const auto& r) -> const std::string& {
        if constexpr (std::is_same_v<std::decay_t<decltype(r)>, PlanRecord>) {
          return r.plan.name;
        } else {
          return r.service;
        }
      },
      payload);
}

std::string to_json_line(const KbEvent& event) {
  json j = {{"run_id", event.run_id},
            {"tick", event.tick},
            {"kind", to_string(event.kind())}};
  j["payload"] = std::visit([](const auto& r) { return payload_json(r); },
                            event.payload);
  return j.dump();
}

KnowledgeBase::KnowledgeBase(const std::filesystem::path& journal)
    : journal_(std::make_unique<std::ofstream>(journal, std::ios::app)) {
  if (!*journal_) {
    throw KnowledgeBaseError("cannot open journal " + journal.string());
  }
}

void KnowledgeBase::register_run(const std::string& run_id) {
  std::lock_guard lock(mu_);
  if (!runs_.try_emplace(run_id).second) {
    throw KnowledgeBaseError("run '" + run_id + "' already registered");
  }
}

void KnowledgeBase::close_run(const std::string& run_id) {
  std::lock_guard lock(mu_);
  auto it = runs_.find(run_id);
  if (it == runs_.end()) {
    throw KnowledgeBaseError("unknown run '" + run_id + "'");
  }
  it->second.closed = true;
  if (journal_) journal_->flush();
}

bool KnowledgeBase::has_run(const std::string& run_id) const {
  std::lock_guard lock(mu_);
  return runs_.count(run_id) != 0;
}

bool KnowledgeBase::is_closed(const std::string& run_id) const {
  std::lock_guard lock(mu_);
  return find_run(run_id).closed;
}

const KnowledgeBase::Run& KnowledgeBase::find_run(
    const std::string& run_id) const {
  auto it = runs_.find(run_id);
  if (it == runs_.end()) {
    throw KnowledgeBaseError("unknown run '" + run_id + "'");
  }
  return it->second;
}

void KnowledgeBase::append(KbEvent event) {
  std::lock_guard lock(mu_);
  auto it = runs_.find(event.run_id);
  if (it == runs_.end()) {
    throw KnowledgeBaseError("append to unregistered run '" + event.run_id +
                             "'");
  }
  if (it->second.closed) {
    throw KnowledgeBaseError("append to closed run '" + event.run_id + "'");
  }
  auto& log = it->second.events;
  const auto key = order_key(event);
  auto pos = log.end();
  // Appends arrive almost always in order; only walk back when needed.
  if (!log.empty() && key < order_key(log.back())) {
    pos = std::upper_bound(log.begin(), log.end(), event,
                           [](const KbEvent& a, const KbEvent& b) {
                             return order_key(a) < order_key(b);
                           });
  }
  if (journal_) *journal_ << to_json_line(event) << '\n';
  log.insert(pos, std::move(event));
}

std::vector<KbEvent> KnowledgeBase::events(const std::string& run_id) const {
  std::lock_guard lock(mu_);
  return find_run(run_id).events;
}

std::vector<KbEvent> KnowledgeBase::query(const std::string& run_id,
                                          std::int64_t tick) const {
  std::lock_guard lock(mu_);
  const auto& log = find_run(run_id).events;
  auto lo = std::lower_bound(
      log.begin(), log.end(), tick,
      [](const KbEvent& e, std::int64_t t) { return e.tick < t; });
  auto hi = std::upper_bound(
      lo, log.end(), tick,
      [](std::int64_t t, const KbEvent& e) { return t < e.tick; });
  return {lo, hi};
}

std::size_t KnowledgeBase::size(const std::string& run_id) const {
  std::lock_guard lock(mu_);
  return find_run(run_id).events.size();
}

std::string KnowledgeBase::export_run(const std::string& run_id,
                                      ExportFormat format) const {
  std::lock_guard lock(mu_);
  const Run& run = find_run(run_id);
  if (!run.closed) {
    throw KnowledgeBaseError("run '" + run_id + "' must be closed to export");
  }
  std::ostringstream out;
  if (format == ExportFormat::JsonLines) {
    for (const auto& e : run.events) out << to_json_line(e) << '\n';
    return out.str();
  }
  out << kCsvHeader << '\n';
  for (const auto& e : run.events) {
    const auto* s = std::get_if<SnapshotRecord>(&e.payload);
    if (s == nullptr) continue;
    out << e.tick << ',' << s->service << ',' << format_2dp(s->cmv) << ','
        << s->cr << ',' << s->dr << ',' << s->max_r << ',' << to_string(s->sd)
        << ',' << to_string(s->res_sd) << ',' << s->res_dr << ',' << s->supply
        << ',' << s->demand << ',' << s->capacity << '\n';
  }
  return out.str();
}

}  // namespace hpalab
