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

#ifndef HPALAB_RUNNER_HPP
#define HPALAB_RUNNER_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "hpalab/experiment.hpp"
#include "hpalab/metrics.hpp"
#include "hpalab/simulator.hpp"

namespace hpalab {

struct RunArtifacts {
  std::string scenario;
  AutoscalerKind autoscaler = AutoscalerKind::Smart;
  RunResult result;
  ScenarioReport report;
  std::string events_csv;
  std::string report_json;
};

// One simulation recorded through a knowledge base and summarized.
RunArtifacts execute_run(const Scenario& scenario, AutoscalerKind autoscaler);

// Every (scenario, autoscaler) pair of the config, scenario-major.
// Runs are spread over `threads` workers; output order does not depend on
// scheduling.
std::vector<RunArtifacts> execute_experiment(const ExperimentConfig& config,
                                             unsigned threads = 0);

// Writes <out>/<scenario>/<autoscaler>/{events.csv,report.json}.
void write_artifacts(const std::filesystem::path& out,
                     const std::vector<RunArtifacts>& runs);

}  // namespace hpalab

#endif  // HPALAB_RUNNER_HPP
