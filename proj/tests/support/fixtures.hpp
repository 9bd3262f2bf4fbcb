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

// Shared test fixtures: the two worked balancer cases, a random instance
// generator, and a text rendering of a balancer pass for golden files.

#ifndef HPALAB_TESTS_FIXTURES_HPP
#define HPALAB_TESTS_FIXTURES_HPP

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hpalab/resource_manager.hpp"
#include "reference_balancer.hpp"

namespace fixtures {

struct Instance {
  std::vector<hpalab::ManagerVerdict> verdicts;
  hpalab::SpecMap specs;

  std::int64_t capacity() const {
    std::int64_t total = 0;
    for (const auto& v : verdicts) {
      total += v.max_r * specs.at(v.name).cpu_request.count();
    }
    return total;
  }
};

inline void add(Instance& inst, const std::string& name, std::int64_t req,
                hpalab::Replicas cr, hpalab::Replicas dr,
                hpalab::Replicas max_r) {
  inst.specs.emplace(name, hpalab::MicroserviceSpec::make(name, req, 2 * req));
  inst.verdicts.push_back(
      {name, dr, hpalab::plan_scaling(cr, dr, 1), max_r});
}

// A(dr 7, max 5) borrows from B(dr 1, max 5); C sits exactly at capacity.
inline Instance conservation_case() {
  Instance inst;
  add(inst, "A", 100, 5, 7, 5);
  add(inst, "B", 100, 5, 1, 5);
  add(inst, "C", 100, 3, 3, 3);
  return inst;
}

// A(dr 10, max 5) is only partly served by B(dr 2, max 4).
inline Instance negative_pool_case() {
  Instance inst;
  add(inst, "A", 100, 5, 10, 5);
  add(inst, "B", 100, 4, 2, 4);
  return inst;
}

// Up to 12 services, requests from {70, 100, 200}, dr and max_r in [0, 20].
inline Instance random_instance(std::mt19937_64& rng) {
  static constexpr std::int64_t kRequests[] = {70, 100, 200};
  std::uniform_int_distribution<int> count(1, 12);
  std::uniform_int_distribution<int> pick(0, 2);
  std::uniform_int_distribution<hpalab::Replicas> reps(0, 20);
  Instance inst;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    char name[8];
    std::snprintf(name, sizeof name, "s%02d", i);
    const hpalab::Replicas cr = reps(rng);
    const hpalab::Replicas dr = reps(rng);
    const hpalab::Replicas max_r = reps(rng);
    add(inst, name, kRequests[pick(rng)], cr, dr, max_r);
  }
  // Shuffle so input order never lines up with the sort order.
  std::shuffle(inst.verdicts.begin(), inst.verdicts.end(), rng);
  return inst;
}

inline oracle::Action to_oracle(hpalab::ScaleAction a) {
  switch (a) {
    case hpalab::ScaleAction::ScaleUp:
      return oracle::Action::Up;
    case hpalab::ScaleAction::ScaleDown:
      return oracle::Action::Down;
    case hpalab::ScaleAction::NoScale:
      break;
  }
  return oracle::Action::None;
}

inline std::vector<oracle::Input> to_oracle(const Instance& inst) {
  std::vector<oracle::Input> out;
  for (const auto& v : inst.verdicts) {
    out.push_back({v.name, inst.specs.at(v.name).cpu_request.count(), v.dr,
                   v.max_r, to_oracle(v.sd)});
  }
  return out;
}

// Empty when the library result equals the reference; otherwise a
// description of the first difference.
inline std::optional<std::string> mismatch(const hpalab::ArmResult& got,
                                           const oracle::Reference& want) {
  std::ostringstream why;
  if (got.state.initial_pool != want.initial_pool) {
    why << "initial pool " << got.state.initial_pool << " vs "
        << want.initial_pool;
    return why.str();
  }
  if (got.state.rows.size() != want.steps.size()) {
    why << "trace length " << got.state.rows.size() << " vs "
        << want.steps.size();
    return why.str();
  }
  for (std::size_t i = 0; i < want.steps.size(); ++i) {
    const auto& g = got.state.rows[i];
    const auto& w = want.steps[i];
    const bool under = g.kind == hpalab::ProvisionKind::Under;
    if (g.name != w.name || under != w.under || g.feasible_r != w.feasible ||
        g.u_max_r != w.u_max || g.pool_after != w.pool_after) {
      why << "step " << i << ": " << g.name << " feasible " << g.feasible_r
          << " u_max " << g.u_max_r << " pool " << g.pool_after << " vs "
          << w.name << " feasible " << w.feasible << " u_max " << w.u_max
          << " pool " << w.pool_after;
      return why.str();
    }
  }
  if (got.plans.size() != want.outputs.size()) return "plan count differs";
  for (std::size_t i = 0; i < want.outputs.size(); ++i) {
    const auto& g = got.plans[i];
    const auto& w = want.outputs[i];
    if (g.name != w.name || to_oracle(g.res_sd) != w.res_sd ||
        g.res_dr != w.res_dr || g.updated_max_r != w.new_max) {
      why << "plan " << g.name << ": " << hpalab::to_string(g.res_sd) << ' '
          << g.res_dr << ' ' << g.updated_max_r << " vs " << w.name
          << " res_dr " << w.res_dr << " max " << w.new_max;
      return why.str();
    }
  }
  return std::nullopt;
}

// Capacity in millicores after applying the plans' updated max_r.
inline std::int64_t capacity_after(const Instance& inst,
                                   const hpalab::ArmResult& result) {
  std::int64_t total = 0;
  for (const auto& p : result.plans) {
    total += p.updated_max_r * inst.specs.at(p.name).cpu_request.count();
  }
  return total;
}

inline std::string trace_text(const Instance& inst,
                              const hpalab::ArmResult& result) {
  std::ostringstream out;
  out << "initial_pool " << result.state.initial_pool << '\n'
      << "step kind name total_r used_res feasible_r u_max_r pool_after\n";
  std::size_t step = 0;
  for (const auto& row : result.state.rows) {
    out << step++ << ' ' << hpalab::to_string(row.kind) << ' ' << row.name
        << ' ' << hpalab::format_2dp(row.total_r) << ' ' << row.used_res << ' '
        << row.feasible_r << ' ' << row.u_max_r << ' ' << row.pool_after
        << '\n';
  }
  for (const auto& p : result.plans) {
    out << "plan " << p.name << ' ' << hpalab::to_string(p.res_sd) << ' '
        << p.res_dr << ' ' << p.updated_max_r << '\n';
  }
  out << "capacity_before " << inst.capacity() << '\n'
      << "capacity_after " << capacity_after(inst, result) << '\n';
  return out.str();
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace fixtures

#endif  // HPALAB_TESTS_FIXTURES_HPP
