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

// Experiment configuration: the default 11-service application, the
// 3x3 scenario matrix and the JSON config file that overrides them.
// The file format is described in docs/config.md.

#ifndef HPALAB_EXPERIMENT_HPP
#define HPALAB_EXPERIMENT_HPP

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hpalab/simulator.hpp"

namespace hpalab {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kConfigSchemaVersion = 1;

// A service before a scenario assigns max_r and the threshold.
struct ServiceTemplate {
  MicroserviceSpec spec;
  DemandCoefficients demand;
  Replicas min_r = 1;
  Replicas initial_cr = 1;
};

std::vector<ServiceTemplate> default_application();

struct ScenarioPoint {
  Replicas max_r = 0;
  double threshold = 0.0;
};

// {2, 5, 10} replicas x {20, 50, 80} percent.
std::vector<ScenarioPoint> default_matrix();

struct ExperimentConfig {
  std::vector<Scenario> scenarios;
  std::vector<AutoscalerKind> autoscalers;
  std::uint64_t seed = 0;
};

Scenario make_scenario(const std::vector<ServiceTemplate>& services,
                       const ScenarioPoint& point);

// Default application, default load profile, full matrix, both autoscalers.
ExperimentConfig default_experiment();

// Throws ConfigError for malformed JSON, unknown keys, wrong types or any
// scenario that fails validation.
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace hpalab

#endif  // HPALAB_EXPERIMENT_HPP
