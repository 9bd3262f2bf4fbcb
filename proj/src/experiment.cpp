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

#include "hpalab/experiment.hpp"

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include <json.hpp>

namespace hpalab {

namespace {

using nlohmann::json;

ServiceTemplate service(const char* name, std::int64_t req, std::int64_t lim,
                        double base, double per_user) {
  return ServiceTemplate{MicroserviceSpec::make(name, req, lim),
                         DemandCoefficients{base, per_user}, 1, 1};
}

void reject_unknown_keys(const json& obj, std::string_view where,
                         std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) {
    throw ConfigError(std::string(where) + ": expected an object");
  }
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) {
      throw ConfigError(std::string(where) + ": unknown key '" + key + "'");
    }
  }
}

template <typename T>
void read(const json& obj, const char* key, T& out, std::string_view where) {
  auto it = obj.find(key);
  if (it == obj.end()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string(where) + "." + key + ": wrong type");
  }
}

std::vector<ServiceTemplate> parse_services(const json& services,
                                            const json* demand) {
  if (!services.is_array() || services.empty()) {
    throw ConfigError("services: expected a non-empty array");
  }
  std::vector<ServiceTemplate> out;
  for (const auto& s : services) {
    reject_unknown_keys(s, "services[]",
                        {"name", "cpu_request_m", "cpu_limit_m", "min_r",
                         "initial_cr"});
    std::string name;
    std::int64_t req = 0;
    std::int64_t lim = 0;
    ServiceTemplate t;
    read(s, "name", name, "services[]");
    read(s, "cpu_request_m", req, "services[]");
    read(s, "cpu_limit_m", lim, "services[]");
    read(s, "min_r", t.min_r, "services[]");
    t.initial_cr = t.min_r;
    read(s, "initial_cr", t.initial_cr, "services[]");
    try {
      t.spec = MicroserviceSpec::make(name, req, lim);
    } catch (const DomainError& e) {
      throw ConfigError(std::string("services[]: ") + e.what());
    }
    out.push_back(std::move(t));
  }
  if (demand == nullptr) {
    // Fall back to the default coefficients of same-named services.
    const auto defaults = default_application();
    for (auto& t : out) {
      for (const auto& d : defaults) {
        if (d.spec.name == t.spec.name) t.demand = d.demand;
      }
    }
  }
  return out;
}

void apply_demand(const json& demand, std::vector<ServiceTemplate>& services) {
  if (!demand.is_object()) throw ConfigError("demand: expected an object");
  for (const auto& [name, coeff] : demand.items()) {
    reject_unknown_keys(coeff, "demand." + name, {"base_m", "per_user_m"});
    ServiceTemplate* target = nullptr;
    for (auto& t : services) {
      if (t.spec.name == name) target = &t;
    }
    if (target == nullptr) {
      throw ConfigError("demand: unknown service '" + name + "'");
    }
    read(coeff, "base_m", target->demand.base_m, "demand." + name);
    read(coeff, "per_user_m", target->demand.per_user_m, "demand." + name);
  }
}

std::vector<ScenarioPoint> parse_points(const json& root) {
  std::vector<ScenarioPoint> points;
  const bool has_list = root.contains("scenarios");
  const bool has_matrix = root.contains("matrix");
  if (has_list && has_matrix) {
    throw ConfigError("give either 'scenarios' or 'matrix', not both");
  }
  if (has_list) {
    const auto& list = root["scenarios"];
    if (!list.is_array() || list.empty()) {
      throw ConfigError("scenarios: expected a non-empty array");
    }
    for (const auto& s : list) {
      reject_unknown_keys(s, "scenarios[]", {"max_r", "threshold"});
      ScenarioPoint p;
      read(s, "max_r", p.max_r, "scenarios[]");
      read(s, "threshold", p.threshold, "scenarios[]");
      points.push_back(p);
    }
  } else if (has_matrix) {
    const auto& m = root["matrix"];
    reject_unknown_keys(m, "matrix", {"max_r", "threshold"});
    std::vector<Replicas> reps;
    std::vector<double> thresholds;
    read(m, "max_r", reps, "matrix");
    read(m, "threshold", thresholds, "matrix");
    if (reps.empty() || thresholds.empty()) {
      throw ConfigError("matrix: max_r and threshold must be non-empty");
    }
    for (auto r : reps) {
      for (auto th : thresholds) points.push_back({r, th});
    }
  } else {
    points = default_matrix();
  }
  return points;
}

}  // namespace

std::vector<ServiceTemplate> default_application() {
  // Request/limit pairs follow the benchmark's defaults. Demand
  // coefficients are synthetic: frontend and currency saturate first.
  return {
      service("frontend", 100, 200, 50, 1.0),
      service("cartservice", 200, 300, 25, 0.17),
      service("productcatalog", 100, 200, 30, 0.39),
      service("currency", 100, 200, 50, 0.6),
      service("payment", 100, 200, 20, 0.0),
      service("shipping", 100, 200, 20, 0.0),
      service("email", 100, 200, 20, 0.0),
      service("checkout", 100, 200, 30, 0.39),
      service("recommendation", 100, 200, 30, 0.39),
      service("adservice", 200, 300, 25, 0.17),
      service("redis", 70, 125, 20, 0.0),
  };
}

std::vector<ScenarioPoint> default_matrix() {
  std::vector<ScenarioPoint> out;
  for (Replicas r : {2, 5, 10}) {
    for (double th : {20.0, 50.0, 80.0}) out.push_back({r, th});
  }
  return out;
}

Scenario make_scenario(const std::vector<ServiceTemplate>& services,
                       const ScenarioPoint& point) {
  Scenario sc;
  sc.id = scenario_id(point.max_r, point.threshold);
  for (const auto& t : services) {
    sc.services.push_back(ServiceConfig{
        t.spec, SlaMetrics{point.threshold, t.min_r, point.max_r},
        t.initial_cr, t.demand});
  }
  return sc;
}

ExperimentConfig default_experiment() {
  ExperimentConfig cfg;
  const auto app = default_application();
  for (const auto& p : default_matrix()) {
    cfg.scenarios.push_back(make_scenario(app, p));
  }
  cfg.autoscalers = {AutoscalerKind::Smart, AutoscalerKind::Baseline};
  return cfg;
}

ExperimentConfig parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  reject_unknown_keys(root, "config",
                      {"schema_version", "autoscaler", "seed", "load", "timing",
                       "flags", "baseline", "demand_jitter", "services",
                       "demand", "scenarios", "matrix"});

  int version = kConfigSchemaVersion;
  read(root, "schema_version", version, "config");
  if (version != kConfigSchemaVersion) {
    throw ConfigError("unsupported schema_version " + std::to_string(version));
  }

  ExperimentConfig cfg;
  read(root, "seed", cfg.seed, "config");

  std::string autoscaler = "both";
  read(root, "autoscaler", autoscaler, "config");
  if (autoscaler == "both") {
    cfg.autoscalers = {AutoscalerKind::Smart, AutoscalerKind::Baseline};
  } else {
    try {
      cfg.autoscalers = {parse_autoscaler(autoscaler)};
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
  }

  const json* demand = root.contains("demand") ? &root["demand"] : nullptr;
  auto services = root.contains("services")
                      ? parse_services(root["services"], demand)
                      : default_application();
  if (demand != nullptr) apply_demand(*demand, services);

  Scenario proto;
  if (root.contains("load")) {
    const auto& l = root["load"];
    reject_unknown_keys(l, "load",
                        {"total_duration_s", "ramp_duration_s", "peak_users",
                         "spawn_rate"});
    read(l, "total_duration_s", proto.load.total_duration_s, "load");
    read(l, "ramp_duration_s", proto.load.ramp_duration_s, "load");
    read(l, "peak_users", proto.load.peak_users, "load");
    read(l, "spawn_rate", proto.load.spawn_rate, "load");
  }
  if (root.contains("timing")) {
    const auto& t = root["timing"];
    reject_unknown_keys(t, "timing",
                        {"tick_s", "reconcile_period_s", "sample_period_s",
                         "startup_delay_s", "cmv_window_s"});
    read(t, "tick_s", proto.timing.tick_s, "timing");
    read(t, "reconcile_period_s", proto.timing.reconcile_period_s, "timing");
    read(t, "sample_period_s", proto.timing.sample_period_s, "timing");
    read(t, "startup_delay_s", proto.timing.startup_delay_s, "timing");
    read(t, "cmv_window_s", proto.timing.cmv_window_s, "timing");
  }
  if (root.contains("flags")) {
    const auto& f = root["flags"];
    reject_unknown_keys(f, "flags",
                        {"strict_conservation", "apply_res_dr_on_noscale",
                         "reset_max_r_each_tick"});
    read(f, "strict_conservation", proto.flags.strict_conservation, "flags");
    read(f, "apply_res_dr_on_noscale", proto.flags.apply_res_dr_on_noscale,
         "flags");
    read(f, "reset_max_r_each_tick", proto.flags.reset_max_r_each_tick,
         "flags");
  }
  if (root.contains("baseline")) {
    const auto& b = root["baseline"];
    reject_unknown_keys(b, "baseline", {"tolerance", "stabilization_window_s"});
    read(b, "tolerance", proto.baseline.tolerance, "baseline");
    read(b, "stabilization_window_s", proto.baseline.stabilization_window_s,
         "baseline");
  }
  read(root, "demand_jitter", proto.demand_jitter, "config");

  std::set<std::string> ids;
  for (const auto& point : parse_points(root)) {
    Scenario sc = make_scenario(services, point);
    sc.load = proto.load;
    sc.timing = proto.timing;
    sc.flags = proto.flags;
    sc.baseline = proto.baseline;
    sc.demand_jitter = proto.demand_jitter;
    sc.seed = cfg.seed;
    try {
      sc.validate();
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
    if (!ids.insert(sc.id).second) {
      throw ConfigError("duplicate scenario " + sc.id);
    }
    cfg.scenarios.push_back(std::move(sc));
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace hpalab
