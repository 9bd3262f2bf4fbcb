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

#include "hpalab/reporting.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace hpalab {

namespace {

using nlohmann::ordered_json;

double round2(double x) {
  const double r = std::round(x * 100.0) / 100.0;
  return r == 0.0 ? 0.0 : r;
}

ordered_json metrics_json(const MetricSet& m) {
  ordered_json j;
  for (const auto& info : metric_table()) {
    j[std::string(info.key)] = round2(m.*info.field);
  }
  return j;
}

MetricSet metrics_from_json(const ordered_json& j) {
  MetricSet m;
  for (const auto& info : metric_table()) {
    m.*info.field = j.at(std::string(info.key)).get<double>();
  }
  return m;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ReportError("cannot read " + p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

std::string report_to_json(const RunMetadata& meta,
                           const ScenarioReport& report) {
  ordered_json j;
  j["scenario"] = meta.scenario;
  j["autoscaler"] = meta.autoscaler;
  j["seed"] = meta.seed;
  j["max_r"] = meta.max_r;
  j["threshold"] = round2(meta.threshold);
  j["arm_invocations"] = meta.arm_invocations;
  j["samples"] = report.samples;
  j["total_time"] = round2(report.total_time);
  j["metrics"] = metrics_json(report.app);
  ordered_json per = ordered_json::object();
  for (const auto& [name, m] : report.per_service) per[name] = metrics_json(m);
  j["per_service"] = per;
  return j.dump(2) + "\n";
}

StoredReport report_from_json(std::string_view text) {
  try {
    const auto j = ordered_json::parse(text);
    StoredReport out;
    out.meta.scenario = j.at("scenario").get<std::string>();
    out.meta.autoscaler = j.at("autoscaler").get<std::string>();
    out.meta.seed = j.at("seed").get<std::uint64_t>();
    out.meta.max_r = j.at("max_r").get<Replicas>();
    out.meta.threshold = j.at("threshold").get<double>();
    out.meta.arm_invocations = j.at("arm_invocations").get<std::uint64_t>();
    out.report.samples = j.at("samples").get<std::int64_t>();
    out.report.total_time = j.at("total_time").get<double>();
    out.report.app = metrics_from_json(j.at("metrics"));
    for (const auto& [name, m] : j.at("per_service").items()) {
      out.report.per_service[name] = metrics_from_json(m);
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ReportError(std::string("bad report: ") + e.what());
  }
}

Comparison compare_reports(const std::vector<StoredReport>& reports) {
  std::map<std::string, const StoredReport*> smart;
  std::map<std::string, const StoredReport*> base;
  for (const auto& r : reports) {
    auto& side = r.meta.autoscaler == "smart" ? smart : base;
    if (r.meta.autoscaler != "smart" && r.meta.autoscaler != "baseline") {
      throw ReportError("unknown autoscaler '" + r.meta.autoscaler + "'");
    }
    if (!side.emplace(r.meta.scenario, &r).second) {
      throw ReportError("duplicate report for " + r.meta.scenario + "/" +
                        r.meta.autoscaler);
    }
  }
  if (smart.empty() || base.empty()) {
    throw ReportError("need both smart and baseline reports to compare");
  }
  std::set<std::string> a;
  std::set<std::string> b;
  for (const auto& [k, _] : smart) a.insert(k);
  for (const auto& [k, _] : base) b.insert(k);
  if (a != b) {
    std::string missing;
    for (const auto& k : a) {
      if (!b.count(k)) missing += " " + k + "(baseline)";
    }
    for (const auto& k : b) {
      if (!a.count(k)) missing += " " + k + "(smart)";
    }
    throw ReportError("mismatched scenario sets; missing:" + missing);
  }

  Comparison cmp;
  for (const auto& [id, s] : smart) {
    const auto* k = base.at(id);
    for (const auto& info : metric_table()) {
      ComparisonRow row;
      row.scenario = id;
      row.metric = std::string(info.key);
      row.smart = s->report.app.*info.field;
      row.baseline = k->report.app.*info.field;
      row.better = info.better;
      if (row.baseline != 0.0) {
        row.ratio = row.smart / row.baseline;
      } else if (row.smart == 0.0) {
        row.ratio = 1.0;
      }
      cmp.rows.push_back(std::move(row));
    }
  }
  return cmp;
}

std::vector<StoredReport> load_reports(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) {
    throw ReportError("not a directory: " + dir.string());
  }
  std::vector<fs::path> files;
  for (const auto& scenario : fs::directory_iterator(dir)) {
    if (!scenario.is_directory()) continue;
    for (const auto& side : fs::directory_iterator(scenario.path())) {
      const auto p = side.path() / "report.json";
      if (side.is_directory() && fs::exists(p)) files.push_back(p);
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<StoredReport> out;
  for (const auto& f : files) out.push_back(report_from_json(read_file(f)));
  return out;
}

namespace {

std::string ratio_text(const ComparisonRow& r) {
  if (!r.ratio) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2fx", *r.ratio);
  return buf;
}

std::string verdict(const ComparisonRow& r) {
  if (r.smart == r.baseline) return "equal";
  const bool smart_higher = r.smart > r.baseline;
  const bool good = r.better == Better::Higher ? smart_higher : !smart_higher;
  return good ? "smart" : "baseline";
}

std::string_view direction(Better b) {
  return b == Better::Lower ? "lower" : "higher";
}

}  // namespace

std::string comparison_text(const Comparison& cmp) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-10s %-22s %12s %12s %10s %-7s %s\n",
                "scenario", "metric", "smart", "baseline", "ratio", "better",
                "winner");
  out << line;
  for (const auto& r : cmp.rows) {
    std::snprintf(line, sizeof(line), "%-10s %-22s %12s %12s %10s %-7s %s\n",
                  r.scenario.c_str(), r.metric.c_str(),
                  format_2dp(r.smart).c_str(), format_2dp(r.baseline).c_str(),
                  ratio_text(r).c_str(), std::string(direction(r.better)).c_str(),
                  verdict(r).c_str());
    out << line;
  }
  return out.str();
}

std::string comparison_csv(const Comparison& cmp) {
  std::ostringstream out;
  out << "scenario,metric,smart,baseline,ratio,better,winner\n";
  for (const auto& r : cmp.rows) {
    out << r.scenario << ',' << r.metric << ',' << format_2dp(r.smart) << ','
        << format_2dp(r.baseline) << ','
        << (r.ratio ? format_2dp(*r.ratio) : std::string("inf")) << ','
        << direction(r.better) << ',' << verdict(r) << '\n';
  }
  return out.str();
}

PlotKind parse_plot_kind(std::string_view text) {
  if (text == "capacity") return PlotKind::Capacity;
  if (text == "utilization") return PlotKind::Utilization;
  throw ReportError("unknown plot kind '" + std::string(text) + "'");
}

std::string_view to_string(PlotKind k) {
  return k == PlotKind::Capacity ? "capacity" : "utilization";
}

std::vector<EventRow> parse_events_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string header;
  if (!std::getline(in, header) || header.empty()) {
    throw ReportError("empty events file");
  }
  if (!header.empty() && header.back() == '\r') header.pop_back();
  if (header != kCsvHeader) {
    throw ReportError("unexpected column schema: " + header);
  }
  std::vector<EventRow> rows;
  std::string line;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 12) {
      throw ReportError("line " + std::to_string(lineno) + ": expected 12 fields");
    }
    try {
      rows.push_back(EventRow{std::stoll(f[0]), f[1], std::stod(f[2]),
                              std::stoll(f[3]), std::stoll(f[4]),
                              std::stoll(f[5]), f[6], f[7], std::stoll(f[8]),
                              std::stoll(f[9]), std::stoll(f[10]),
                              std::stoll(f[11])});
    } catch (const std::logic_error&) {
      throw ReportError("line " + std::to_string(lineno) + ": bad number");
    }
  }
  if (rows.empty()) throw ReportError("events file has no data rows");
  return rows;
}

namespace {

struct Series {
  std::vector<std::string> names;
  std::vector<std::int64_t> times;
  // values[column][time index]
  std::vector<std::vector<double>> values;
};

Series build_series(const std::vector<EventRow>& rows, PlotKind kind,
                    std::optional<double> threshold) {
  std::vector<std::string> services;
  std::map<std::string, std::size_t> index;
  std::map<std::int64_t, std::size_t> time_index;
  for (const auto& r : rows) {
    if (index.emplace(r.service, services.size()).second) {
      services.push_back(r.service);
    }
    time_index.emplace(r.time, 0);
  }
  Series s;
  for (auto& [t, idx] : time_index) {
    idx = s.times.size();
    s.times.push_back(t);
  }
  for (const auto& svc : services) {
    if (kind == PlotKind::Capacity) {
      s.names.push_back(svc + "_demand");
      s.names.push_back(svc + "_capacity");
    } else {
      s.names.push_back(svc + "_cmv");
    }
  }
  if (kind == PlotKind::Utilization && threshold) s.names.push_back("threshold");
  s.values.assign(s.names.size(), std::vector<double>(s.times.size(), 0.0));
  for (const auto& r : rows) {
    const std::size_t ti = time_index.at(r.time);
    const std::size_t si = index.at(r.service);
    if (kind == PlotKind::Capacity) {
      s.values[2 * si][ti] = static_cast<double>(r.demand);
      s.values[2 * si + 1][ti] = static_cast<double>(r.capacity);
    } else {
      s.values[si][ti] = r.cmv;
    }
  }
  if (kind == PlotKind::Utilization && threshold) {
    std::fill(s.values.back().begin(), s.values.back().end(), *threshold);
  }
  return s;
}

}  // namespace

std::string plot_data(const std::vector<EventRow>& rows, PlotKind kind,
                      std::optional<double> threshold) {
  const Series s = build_series(rows, kind, threshold);
  std::ostringstream out;
  out << "# time";
  for (const auto& n : s.names) out << ' ' << n;
  out << '\n';
  for (std::size_t t = 0; t < s.times.size(); ++t) {
    out << s.times[t];
    for (const auto& col : s.values) out << ' ' << format_2dp(col[t]);
    out << '\n';
  }
  return out.str();
}

std::string plot_svg(const std::vector<EventRow>& rows, PlotKind kind,
                     std::optional<double> threshold) {
  static const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                   "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                   "#bcbd22", "#17becf", "#393b79", "#000000"};
  const Series s = build_series(rows, kind, threshold);
  const double width = 960;
  const double height = 480;
  const double left = 60;
  const double right = 200;
  const double top = 30;
  const double bottom = 40;
  double ymax = 1.0;
  for (const auto& col : s.values) {
    for (double v : col) ymax = std::max(ymax, v);
  }
  const double tmin = static_cast<double>(s.times.front());
  const double tspan =
      std::max(1.0, static_cast<double>(s.times.back()) - tmin);
  auto x = [&](double t) {
    return left + (t - tmin) / tspan * (width - left - right);
  };
  auto y = [&](double v) {
    return top + (1.0 - v / ymax) * (height - top - bottom);
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" font-family=\"sans-serif\" "
      << "font-size=\"11\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << left << "\" y=\"18\" font-size=\"14\">"
      << (kind == PlotKind::Capacity ? "CPU demand vs CPU capacity (m)"
                                     : "CPU utilization (%)")
      << "</text>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << y(0) << "\" x2=\""
      << width - right << "\" y2=\"" << y(0) << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left
      << "\" y2=\"" << y(0) << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << 4 << "\" y=\"" << top + 4 << "\">"
      << format_2dp(ymax) << "</text>\n";
  out << "<text x=\"" << width - right - 40 << "\" y=\"" << height - 10
      << "\">time (s)</text>\n";
  for (std::size_t c = 0; c < s.names.size(); ++c) {
    const bool dashed = kind == PlotKind::Capacity && c % 2 == 1;
    const char* color =
        kPalette[(kind == PlotKind::Capacity ? c / 2 : c) % std::size(kPalette)];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\""
        << (dashed ? " stroke-dasharray=\"4 3\"" : "") << " points=\"";
    for (std::size_t t = 0; t < s.times.size(); ++t) {
      out << format_2dp(x(static_cast<double>(s.times[t]))) << ','
          << format_2dp(y(s.values[c][t])) << ' ';
    }
    out << "\"/>\n";
    out << "<text x=\"" << width - right + 10 << "\" y=\""
        << top + 14 * static_cast<double>(c) << "\" fill=\"" << color << "\">"
        << s.names[c] << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace hpalab
