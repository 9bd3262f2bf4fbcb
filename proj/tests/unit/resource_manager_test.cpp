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

#include <gtest/gtest.h>

#include <random>
#include <thread>
#include <vector>

#include "fixtures.hpp"
#include "hpalab/knowledge_base.hpp"
#include "hpalab/resource_manager.hpp"
#include "reference_balancer.hpp"

namespace hpalab {
namespace {

SpecMap specs_of(std::initializer_list<std::pair<const char*, int>> list) {
  SpecMap out;
  for (const auto& [name, req] : list) {
    out.emplace(name, MicroserviceSpec::make(name, req, 2 * req));
  }
  return out;
}

TEST(Inspect, ClassifiesAndPricesEntries) {
  const std::vector<ManagerVerdict> v = {
      {"A", 7, ScaleAction::ScaleUp, 5},
      {"B", 1, ScaleAction::ScaleDown, 5},
      {"C", 3, ScaleAction::NoScale, 3},
  };
  const auto out = inspect(v, specs_of({{"A", 100}, {"B", 100}, {"C", 100}}));
  ASSERT_EQ(out.under.size(), 1u);
  EXPECT_EQ(out.under[0].name, "A");
  EXPECT_EQ(out.under[0].kind, ProvisionKind::Under);
  EXPECT_EQ(out.under[0].delta_r, 2);
  EXPECT_EQ(out.under[0].delta_res, milli(200));
  ASSERT_EQ(out.over.size(), 2u);
  EXPECT_EQ(out.over[0].name, "B");
  EXPECT_EQ(out.over[0].delta_r, 4);
  EXPECT_EQ(out.over[0].delta_res, milli(400));
  EXPECT_EQ(out.over[1].name, "C");
  EXPECT_EQ(out.over[1].kind, ProvisionKind::Over);
  EXPECT_EQ(out.over[1].delta_r, 0);
  EXPECT_EQ(out.over[1].delta_res, milli(0));
}

TEST(Inspect, MissingSpecRejected) {
  const std::vector<ManagerVerdict> v = {{"ghost", 1, ScaleAction::NoScale, 1}};
  EXPECT_THROW(inspect(v, {}), DomainError);
}

TEST(Balance, ConservationCase) {
  const auto inst = fixtures::conservation_case();
  const auto in = inspect(inst.verdicts, inst.specs);
  const auto out = balance(in.under, in.over);
  EXPECT_EQ(out.state.initial_pool, 400);
  EXPECT_EQ(out.feasibility.at("A"), (Feasibility{7, 7}));
  EXPECT_EQ(out.feasibility.at("C"), (Feasibility{3, 3}));
  EXPECT_EQ(out.feasibility.at("B"), (Feasibility{1, 3}));
  EXPECT_EQ(out.state.pool, 0);
  ASSERT_EQ(out.state.rows.size(), 3u);
  EXPECT_EQ(out.state.rows[0].pool_after, 200);
  EXPECT_EQ(out.state.rows[1].name, "C");
  EXPECT_EQ(out.state.rows[2].name, "B");
}

TEST(Balance, NegativePoolCase) {
  const auto inst = fixtures::negative_pool_case();
  const auto in = inspect(inst.verdicts, inst.specs);
  const auto out = balance(in.under, in.over);
  EXPECT_EQ(out.state.initial_pool, 200);
  EXPECT_EQ(out.feasibility.at("A"), (Feasibility{7, 7}));
  EXPECT_EQ(out.feasibility.at("B"), (Feasibility{2, 2}));
  EXPECT_EQ(out.state.rows[0].pool_after, 0);
  EXPECT_EQ(out.state.pool, -200);
  EXPECT_EQ(out.state.min_pool_under_pass, 0);
}

TEST(Balance, NoShortfallKeepsEveryResidual) {
  const std::vector<ManagerVerdict> v = {
      {"a", 1, ScaleAction::NoScale, 4},
      {"b", 0, ScaleAction::NoScale, 2},
      {"c", 5, ScaleAction::NoScale, 5},
  };
  const auto in = inspect(v, specs_of({{"a", 70}, {"b", 200}, {"c", 100}}));
  const auto out = balance(in.under, in.over);
  EXPECT_EQ(out.feasibility.at("a").u_max_r, 4);
  EXPECT_EQ(out.feasibility.at("b").u_max_r, 2);
  EXPECT_EQ(out.feasibility.at("c").u_max_r, 5);
  EXPECT_EQ(out.state.pool, out.state.initial_pool);
}

TEST(Balance, EmptyInputs) {
  const auto out = balance({}, {});
  EXPECT_TRUE(out.feasibility.empty());
  EXPECT_TRUE(out.state.rows.empty());
  EXPECT_EQ(out.state.pool, 0);
}

TEST(Balance, ShortfallWithoutDonorsStaysAtMax) {
  const std::vector<ManagerVerdict> v = {{"a", 9, ScaleAction::ScaleUp, 4}};
  const auto in = inspect(v, specs_of({{"a", 100}}));
  const auto out = balance(in.under, in.over);
  EXPECT_EQ(out.feasibility.at("a"), (Feasibility{4, 4}));
}

TEST(Balance, LargestShortfallServedFirstAndTiesByName) {
  // pool = 300m; "big" needs 400m, "x" and "y" need 100m each.
  const std::vector<ManagerVerdict> v = {
      {"y", 3, ScaleAction::ScaleUp, 2},
      {"x", 3, ScaleAction::ScaleUp, 2},
      {"big", 6, ScaleAction::ScaleUp, 2},
      {"donor", 1, ScaleAction::NoScale, 4},
  };
  const auto in = inspect(
      v, specs_of({{"y", 100}, {"x", 100}, {"big", 100}, {"donor", 100}}));
  const auto out = balance(in.under, in.over);
  ASSERT_EQ(out.state.rows.size(), 4u);
  EXPECT_EQ(out.state.rows[0].name, "big");
  EXPECT_EQ(out.state.rows[1].name, "x");
  EXPECT_EQ(out.state.rows[2].name, "y");
  EXPECT_EQ(out.feasibility.at("big").feasible_r, 5);
  EXPECT_EQ(out.feasibility.at("x").feasible_r, 2);
  EXPECT_EQ(out.feasibility.at("y").feasible_r, 2);
}

TEST(Balance, FractionalPoolIsFloored) {
  // 250m of pool buys two 100m replicas, not three.
  const std::vector<ManagerVerdict> v = {
      {"a", 9, ScaleAction::ScaleUp, 4},
      {"d", 1, ScaleAction::NoScale, 2},
      {"e", 1, ScaleAction::NoScale, 4},
  };
  const auto in = inspect(v, specs_of({{"a", 100}, {"d", 70}, {"e", 60}}));
  const auto out = balance(in.under, in.over);
  EXPECT_EQ(out.state.initial_pool, 70 + 180);
  EXPECT_EQ(out.feasibility.at("a").feasible_r, 6);
  EXPECT_EQ(out.state.rows[0].pool_after, 50);
}

TEST(Balance, StrictModeChargesRetainedResiduals) {
  const auto inst = fixtures::negative_pool_case();
  const auto in = inspect(inst.verdicts, inst.specs);
  const auto out = balance(in.under, in.over, ArmOptions{true});
  EXPECT_EQ(out.feasibility.at("A"), (Feasibility{7, 7}));
  EXPECT_EQ(out.feasibility.at("B"), (Feasibility{2, 2}));
  EXPECT_EQ(out.state.pool, 0);
}

TEST(Balance, StrictModeNeverGrowsCapacity) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 3000; ++i) {
    const auto inst = fixtures::random_instance(rng);
    AdaptiveResourceManager arm(ArmOptions{true});
    const auto r = arm.run(inst.verdicts, inst.specs);
    ASSERT_LE(fixtures::capacity_after(inst, r), inst.capacity());
    ASSERT_GE(r.state.pool, 0);
  }
}

TEST(Balance, StrictModeConservesWithUniformRequests) {
  // With one request size every pool value is a whole number of
  // replicas, so the overprovision pass hands all of it back.
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<Replicas> reps(0, 20);
  for (int i = 0; i < 3000; ++i) {
    fixtures::Instance inst;
    for (int s = 0; s < 8; ++s) {
      fixtures::add(inst, "s" + std::to_string(s), 100, reps(rng), reps(rng),
                    reps(rng));
    }
    AdaptiveResourceManager arm(ArmOptions{true});
    const auto r = arm.run(inst.verdicts, inst.specs);
    ASSERT_EQ(fixtures::capacity_after(inst, r), inst.capacity());
  }
}

TEST(Adapt, Examples) {
  const std::vector<ManagerVerdict> v = {
      {"A", 7, ScaleAction::ScaleUp, 5},
      {"P", 10, ScaleAction::ScaleUp, 5},
      {"N", 10, ScaleAction::ScaleUp, 5},
      {"D", 1, ScaleAction::ScaleDown, 5},
  };
  FeasibilityMap f = {{"A", {7, 7}}, {"P", {7, 7}}, {"N", {5, 5}},
                      {"D", {1, 3}}};
  const auto plans = adapt(v, f);
  EXPECT_EQ(plans[0], (ResourcePlan{"A", ScaleAction::ScaleUp, 7, 7}));
  EXPECT_EQ(plans[1], (ResourcePlan{"P", ScaleAction::ScaleUp, 7, 7}));
  EXPECT_EQ(plans[2], (ResourcePlan{"N", ScaleAction::NoScale, 5, 5}));
  EXPECT_EQ(plans[3], (ResourcePlan{"D", ScaleAction::ScaleDown, 1, 3}));
}

TEST(Adapt, MissingRowRejected) {
  const std::vector<ManagerVerdict> v = {{"A", 7, ScaleAction::ScaleUp, 5}};
  EXPECT_THROW(adapt(v, {}), DomainError);
}

TEST(Arm, MatchesReferenceOnRandomInstances) {
  std::mt19937_64 rng(2024);
  for (bool strict : {false, true}) {
    AdaptiveResourceManager arm(ArmOptions{strict});
    for (int i = 0; i < 1500; ++i) {
      const auto inst = fixtures::random_instance(rng);
      const auto got = arm.run(inst.verdicts, inst.specs);
      const auto want =
          oracle::run_reference(fixtures::to_oracle(inst), strict);
      const auto why = fixtures::mismatch(got, want);
      ASSERT_FALSE(why.has_value()) << *why;
    }
  }
}

TEST(Arm, BoundProperties) {
  std::mt19937_64 rng(31337);
  AdaptiveResourceManager arm;
  for (int i = 0; i < 3000; ++i) {
    const auto inst = fixtures::random_instance(rng);
    const auto r = arm.run(inst.verdicts, inst.specs);
    std::int64_t granted = 0;
    for (const auto& e : r.inspection.under) {
      const auto& f = r.feasibility.at(e.name);
      ASSERT_LE(e.max_r, f.u_max_r);
      ASSERT_LE(f.u_max_r, e.dr);
      ASSERT_EQ(f.u_max_r, f.feasible_r);
      granted += (f.u_max_r - e.max_r) * e.res_req.count();
    }
    for (const auto& e : r.inspection.over) {
      const auto& f = r.feasibility.at(e.name);
      ASSERT_LE(e.dr, f.u_max_r);
      ASSERT_LE(f.u_max_r, e.max_r);
      ASSERT_EQ(f.feasible_r, e.dr);
    }
    ASSERT_LE(granted, r.state.initial_pool);
    ASSERT_GE(r.state.min_pool_under_pass, 0);
    for (const auto& p : r.plans) ASSERT_LE(p.res_dr, p.updated_max_r);
    for (const auto& row : r.state.rows) {
      const Replicas before = [&] {
        for (const auto& v : inst.verdicts) {
          if (v.name == row.name) return v.max_r;
        }
        return Replicas{-1};
      }();
      const Replicas change =
          row.u_max_r > before ? row.u_max_r - before : before - row.u_max_r;
      ASSERT_EQ(row.used_res,
                change * inst.specs.at(row.name).cpu_request.count());
    }
  }
}

TEST(Arm, OutputIsIndependentOfInputOrder) {
  std::mt19937_64 rng(8);
  AdaptiveResourceManager arm;
  for (int i = 0; i < 500; ++i) {
    auto inst = fixtures::random_instance(rng);
    const auto first = arm.run(inst.verdicts, inst.specs);
    std::shuffle(inst.verdicts.begin(), inst.verdicts.end(), rng);
    const auto second = arm.run(inst.verdicts, inst.specs);
    ASSERT_EQ(first.feasibility, second.feasibility);
    ASSERT_EQ(first.state.pool, second.state.pool);
  }
}

TEST(Arm, CountsInvocationsAndRecordsTrace) {
  KnowledgeBase kb;
  kb.register_run("r");
  AdaptiveResourceManager arm;
  EXPECT_EQ(arm.invocations(), 0u);
  const auto inst = fixtures::conservation_case();
  arm.run(inst.verdicts, inst.specs, KbSink{&kb, "r", 30});
  EXPECT_EQ(arm.invocations(), 1u);
  int traces = 0, plans = 0;
  for (const auto& e : kb.query("r", 30)) {
    if (e.kind() == EventKind::ArmTrace) ++traces;
    if (e.kind() == EventKind::Plan) {
      ++plans;
      EXPECT_EQ(std::get<PlanRecord>(e.payload).source, "arm");
    }
  }
  EXPECT_EQ(traces, 3);
  EXPECT_EQ(plans, 3);
}

TEST(Arm, CounterIsSafeAcrossThreads) {
  AdaptiveResourceManager arm;
  const auto inst = fixtures::conservation_case();
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&] {
      for (int i = 0; i < 250; ++i) arm.run(inst.verdicts, inst.specs);
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(arm.invocations(), 1000u);
}

TEST(Golden, WorkedTracesMatch) {
  AdaptiveResourceManager arm;
  const std::string dir = HPALAB_GOLDEN_DIR;
  const auto a = fixtures::conservation_case();
  EXPECT_EQ(fixtures::trace_text(a, arm.run(a.verdicts, a.specs)),
            fixtures::read_text(dir + "/arm_conservation.golden"));
  const auto b = fixtures::negative_pool_case();
  EXPECT_EQ(fixtures::trace_text(b, arm.run(b.verdicts, b.specs)),
            fixtures::read_text(dir + "/arm_negative_pool.golden"));
}

}  // namespace
}  // namespace hpalab
