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

#include "hpalab/runner.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <thread>

#include "hpalab/knowledge_base.hpp"
#include "hpalab/reporting.hpp"

namespace hpalab {

RunArtifacts execute_run(const Scenario& scenario, AutoscalerKind autoscaler) {
  KnowledgeBase kb;
  const std::string run_id =
      scenario.id + "/" + std::string(to_string(autoscaler));
  kb.register_run(run_id);

  RunArtifacts out;
  out.scenario = scenario.id;
  out.autoscaler = autoscaler;
  out.result = run_scenario(scenario, autoscaler, RunOptions{&kb, run_id});
  kb.close_run(run_id);

  out.events_csv = kb.export_run(run_id, ExportFormat::Csv);
  out.report =
      compute_report(out.result.snapshots, scenario.timing.sample_period_s);

  const auto& first = scenario.services.front().sla;
  RunMetadata meta{scenario.id,       std::string(to_string(autoscaler)),
                   scenario.seed,     first.tmv,
                   first.max_r,       out.result.arm_invocations};
  out.report_json = report_to_json(meta, out.report);
  return out;
}

std::vector<RunArtifacts> execute_experiment(const ExperimentConfig& config,
                                             unsigned threads) {
  struct Job {
    const Scenario* scenario;
    AutoscalerKind kind;
  };
  std::vector<Job> jobs;
  for (const auto& sc : config.scenarios) {
    for (auto kind : config.autoscalers) jobs.push_back({&sc, kind});
  }

  std::vector<RunArtifacts> out(jobs.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(jobs.size()));

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(jobs.size());
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        out[i] = execute_run(*jobs[i].scenario, jobs[i].kind);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

void write_artifacts(const std::filesystem::path& out,
                     const std::vector<RunArtifacts>& runs) {
  namespace fs = std::filesystem;
  for (const auto& run : runs) {
    const fs::path dir =
        out / run.scenario / std::string(to_string(run.autoscaler));
    fs::create_directories(dir);
    std::ofstream(dir / "events.csv", std::ios::binary) << run.events_csv;
    std::ofstream(dir / "report.json", std::ios::binary) << run.report_json;
  }
}

}  // namespace hpalab
