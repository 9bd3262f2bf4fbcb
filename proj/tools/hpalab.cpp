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

// hpalab: run autoscaler experiments, compare reports, emit plot data.
//
//   hpalab run configs/default_matrix.json --autoscaler both --out runs
//   hpalab compare runs
//   hpalab plot runs/5R-50%/smart/events.csv --kind capacity

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hpalab/experiment.hpp"
#include "hpalab/reporting.hpp"
#include "hpalab/runner.hpp"

namespace fs = std::filesystem;
using namespace hpalab;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ReportError("cannot read " + p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_plots(const fs::path& csv, const std::vector<EventRow>& rows,
                 PlotKind kind, std::optional<double> threshold) {
  const fs::path dir = csv.parent_path();
  const std::string stem = "plot." + std::string(to_string(kind));
  std::ofstream(dir / (stem + ".dat"), std::ios::binary)
      << plot_data(rows, kind, threshold);
  std::ofstream(dir / (stem + ".svg"), std::ios::binary)
      << plot_svg(rows, kind, threshold);
}

struct RunArgs {
  std::string config;
  std::string autoscaler = "both";
  std::string out = "runs";
  std::optional<std::uint64_t> seed;
  std::string scenario;
  unsigned threads = 0;
  bool plots = false;
};

int cmd_run(const RunArgs& args) {
  ExperimentConfig cfg;
  try {
    cfg = args.config.empty() ? default_experiment() : load_config(args.config);
    if (args.autoscaler == "both") {
      cfg.autoscalers = {AutoscalerKind::Smart, AutoscalerKind::Baseline};
    } else {
      cfg.autoscalers = {parse_autoscaler(args.autoscaler)};
    }
    if (!args.scenario.empty()) {
      std::erase_if(cfg.scenarios, [&](const Scenario& s) {
        return s.id != args.scenario;
      });
      if (cfg.scenarios.empty()) {
        throw ConfigError("no scenario named " + args.scenario);
      }
    }
    if (args.seed) {
      cfg.seed = *args.seed;
      for (auto& s : cfg.scenarios) s.seed = *args.seed;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  const auto runs = execute_experiment(cfg, args.threads);
  write_artifacts(args.out, runs);
  for (const auto& r : runs) {
    std::cout << r.scenario << '/' << to_string(r.autoscaler)
              << ": supply=" << format_2dp(r.report.app.supply_cpu)
              << "m underprovision=" << format_2dp(r.report.app.cpu_underprovision)
              << "m over " << format_2dp(r.report.app.underprovision_time)
              << " min\n";
    if (args.plots) {
      const fs::path csv = fs::path(args.out) / r.scenario /
                           std::string(to_string(r.autoscaler)) / "events.csv";
      const auto rows = parse_events_csv(r.events_csv);
      std::optional<double> threshold;
      for (const auto& s : cfg.scenarios) {
        if (s.id == r.scenario) threshold = s.services.front().sla.tmv;
      }
      write_plots(csv, rows, PlotKind::Capacity, std::nullopt);
      write_plots(csv, rows, PlotKind::Utilization, threshold);
    }
  }

  if (cfg.autoscalers.size() == 2) {
    std::vector<StoredReport> stored;
    for (const auto& r : runs) stored.push_back(report_from_json(r.report_json));
    const auto cmp = compare_reports(stored);
    std::ofstream(fs::path(args.out) / "comparison.txt", std::ios::binary)
        << comparison_text(cmp);
    std::ofstream(fs::path(args.out) / "comparison.csv", std::ios::binary)
        << comparison_csv(cmp);
    std::cout << '\n' << comparison_text(cmp);
  }
  return EXIT_SUCCESS;
}

int cmd_compare(const std::string& dir) {
  const auto cmp = compare_reports(load_reports(dir));
  std::ofstream(fs::path(dir) / "comparison.txt", std::ios::binary)
      << comparison_text(cmp);
  std::ofstream(fs::path(dir) / "comparison.csv", std::ios::binary)
      << comparison_csv(cmp);
  std::cout << comparison_text(cmp);
  return EXIT_SUCCESS;
}

int cmd_plot(const std::string& csv, const std::string& kind_text,
             std::optional<double> threshold) {
  const PlotKind kind = parse_plot_kind(kind_text);
  const auto rows = parse_events_csv(slurp(csv));
  const fs::path sibling = fs::path(csv).parent_path() / "report.json";
  if (!threshold && kind == PlotKind::Utilization && fs::exists(sibling)) {
    threshold = report_from_json(slurp(sibling)).meta.threshold;
  }
  write_plots(csv, rows, kind, threshold);
  std::cout << "wrote "
            << (fs::path(csv).parent_path() /
                ("plot." + std::string(to_string(kind)) + ".{dat,svg}"))
                   .string()
            << '\n';
  return EXIT_SUCCESS;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Horizontal pod autoscaler laboratory"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run scenarios under the autoscalers");
  run->add_option("config", run_args.config,
                  "Scenario config (JSON); defaults to the built-in matrix");
  run->add_option("--autoscaler", run_args.autoscaler, "smart|baseline|both")
      ->check(CLI::IsMember({"smart", "baseline", "both"}));
  run->add_option("--out", run_args.out, "Output directory");
  run->add_option("--seed", run_args.seed, "Override the config seed");
  run->add_option("--scenario", run_args.scenario,
                  "Only run this scenario id, e.g. 5R-50%");
  run->add_option("--threads", run_args.threads, "Worker threads (0 = auto)");
  run->add_flag("--plots", run_args.plots, "Also write plot data and SVGs");

  std::string report_dir;
  auto* compare =
      app.add_subcommand("compare", "Compare smart and baseline reports");
  compare->add_option("dir", report_dir, "Directory written by 'run'")
      ->required();

  std::string csv;
  std::string kind = "capacity";
  std::optional<double> threshold;
  auto* plot = app.add_subcommand("plot", "Plot data from an events.csv");
  plot->add_option("csv", csv, "events.csv of one run")->required();
  plot->add_option("--kind", kind, "capacity|utilization")
      ->check(CLI::IsMember({"capacity", "utilization"}));
  plot->add_option("--threshold", threshold,
                   "Threshold line for utilization plots");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and friends exit 0; bad arguments count as config errors.
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) return cmd_run(run_args);
    if (*compare) return cmd_compare(report_dir);
    if (*plot) return cmd_plot(csv, kind, threshold);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitRuntime;
}
