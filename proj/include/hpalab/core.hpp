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

#ifndef HPALAB_CORE_HPP
#define HPALAB_CORE_HPP

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hpalab {

// Raised when a value violates a domain invariant (negative milliCPU,
// limit below request, malformed SLA bounds, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Replicas = std::int64_t;

// Non-negative CPU quantity in millicores. Arithmetic is exact integer
// arithmetic; signed intermediate results (balancer pool) are carried
// as plain std::int64_t by the callers that need them.
class MilliCpu {
 public:
  constexpr MilliCpu() = default;

  // Throws DomainError on negative input.
  static MilliCpu of(std::int64_t millicores);

  constexpr std::int64_t count() const { return value_; }

  friend constexpr MilliCpu operator+(MilliCpu a, MilliCpu b) {
    return MilliCpu(a.value_ + b.value_);
  }
  friend constexpr MilliCpu operator*(MilliCpu a, Replicas n) {
    return MilliCpu(a.value_ * n);
  }
  friend constexpr MilliCpu operator*(Replicas n, MilliCpu a) { return a * n; }
  MilliCpu& operator+=(MilliCpu other) {
    value_ += other.value_;
    return *this;
  }

  friend constexpr auto operator<=>(MilliCpu, MilliCpu) = default;

 private:
  constexpr explicit MilliCpu(std::int64_t v) : value_(v) {}
  std::int64_t value_ = 0;
};

MilliCpu milli(std::int64_t value);

std::string to_string(MilliCpu m);  // "100m"

enum class ScaleAction { ScaleUp, ScaleDown, NoScale };

// Inspector classification of a microservice inside one ARM pass.
enum class ProvisionKind { Under, Over };

std::string_view to_string(ScaleAction a);
// Inverse of to_string; throws DomainError on unknown names.
ScaleAction parse_scale_action(std::string_view text);

std::string_view to_string(ProvisionKind k);
ProvisionKind parse_provision_kind(std::string_view text);

struct MicroserviceSpec {
  std::string name;
  MilliCpu cpu_request;
  MilliCpu cpu_limit;

  // Highest CMV a replica can report: 100 * limit / request.
  double max_utilization() const;
  void validate() const;

  static MicroserviceSpec make(std::string name, std::int64_t request_m,
                               std::int64_t limit_m);
};

struct PodMetrics {
  double cmv = 0.0;  // percent of cpu_request, may exceed 100
  Replicas cr = 0;

  void validate(const MicroserviceSpec& owner) const;
};

struct SlaMetrics {
  double tmv = 0.0;  // percent
  Replicas min_r = 1;
  Replicas max_r = 1;

  void validate() const;
};

struct ManagerVerdict {
  std::string name;
  Replicas dr = 0;
  ScaleAction sd = ScaleAction::NoScale;
  Replicas max_r = 0;
};

struct ResourcePlan {
  std::string name;
  ScaleAction res_sd = ScaleAction::NoScale;
  Replicas res_dr = 0;
  Replicas updated_max_r = 0;

  friend bool operator==(const ResourcePlan&, const ResourcePlan&) = default;
};

// Snaps values within 1e-9 of an integer onto that integer so that
// ceil/floor are not thrown off by accumulated float noise.
double snap_to_integer(double x);

// Two-decimal fixed formatting used for every reported percent or
// milliCPU figure.
std::string format_2dp(double value);

}  // namespace hpalab

#endif  // HPALAB_CORE_HPP
