// Copyright 2026 The tinydse Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tinydse/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "tinydse/errors.hpp"

namespace tinydse {

namespace {

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

std::string far_tag(double far_pct) {
  std::ostringstream out;
  out << far_pct;
  std::string tag = out.str();
  std::replace(tag.begin(), tag.end(), '.', '_');
  return tag;
}

}  // namespace

std::string fmt_seconds(double s) { return fmt("%.6f", s); }
std::string fmt_pct(double pct) { return fmt("%.3f", pct); }
std::string fmt_double(double v) { return fmt("%.6f", v); }

std::string to_csv(const Report& report) {
  std::ostringstream out;
  for (std::size_t i = 0; i < report.columns.size(); ++i) {
    if (i) out << ',';
    out << report.columns[i];
  }
  out << '\n';
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << row[i];
    }
    out << '\n';
  }
  return out.str();
}

std::string to_json(const Report& report) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < report.columns.size(); ++i) obj[report.columns[i]] = row[i];
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

std::string render(const Report& report, ReportFormat format) {
  return format == ReportFormat::csv ? to_csv(report) : to_json(report);
}

Report size_summary_report(const SizeReport& report) {
  Report out;
  out.columns = {"metric", "value"};
  out.rows = {
      {"param_bytes", std::to_string(report.param_bytes)},
      {"peak_activation_bytes", std::to_string(report.peak_activation_bytes)},
      {"psram_required_bytes", std::to_string(report.psram_required_bytes)},
      {"flash_required_bytes", std::to_string(report.flash_required_bytes)},
  };
  return out;
}

Report size_layers_report(const SizeReport& report) {
  Report out;
  out.columns = {"layer", "param_bytes", "activation_bytes"};
  for (const LayerSize& l : report.per_layer)
    out.rows.push_back(
        {l.name, std::to_string(l.param_bytes), std::to_string(l.activation_bytes)});
  return out;
}

Report cost_report(const CostBreakdown& breakdown) {
  Report out;
  out.columns = {"part", "price_cents"};
  for (const CostItem& item : breakdown.items)
    out.rows.push_back({item.name, std::to_string(item.price_cents)});
  out.rows.push_back({"total", std::to_string(breakdown.total_cents)});
  return out;
}

Report latency_report(const PipelineLatency& latency) {
  Report out;
  out.columns = {"metric", "value"};
  for (const BranchLatency& b : latency.branches) {
    out.rows.push_back({"branch_" + b.modality + "_compute_s", fmt_seconds(b.compute_s)});
    out.rows.push_back({"branch_" + b.modality + "_core", std::to_string(b.core)});
  }
  out.rows.push_back({"compute_s", fmt_seconds(latency.compute_s)});
  for (const auto& [modality, seconds] : latency.preprocess_by_modality)
    out.rows.push_back({"preprocess_" + modality + "_s", fmt_seconds(seconds)});
  out.rows.push_back({"preprocess_s", fmt_seconds(latency.preprocess_s)});
  out.rows.push_back({"total_s", fmt_seconds(latency.total_s)});
  return out;
}

Report eer_report(const std::vector<EerReportEntry>& entries) {
  Report out;
  out.columns = {"modality", "metric", "far_pct", "threshold", "value"};
  for (const EerReportEntry& e : entries) {
    out.rows.push_back({e.modality, "eer_pct", "", "", fmt_pct(e.eer * 100.0)});
    for (const auto& [far, op] : e.at_far)
      out.rows.push_back({e.modality, "frr_at_far_pct", fmt_pct(far * 100.0),
                          fmt_double(op.threshold), fmt_pct(op.frr * 100.0)});
  }
  return out;
}

Report histogram_report(const std::map<std::string, Histogram>& by_modality) {
  Report out;
  out.columns = {"modality", "bin_lo", "bin_hi", "same_count", "different_count"};
  for (const auto& [modality, h] : by_modality) {
    double width = (h.hi - h.lo) / static_cast<double>(h.same_counts.size());
    for (std::size_t i = 0; i < h.same_counts.size(); ++i) {
      double lo = h.lo + width * static_cast<double>(i);
      out.rows.push_back({modality, fmt_double(lo), fmt_double(lo + width),
                          std::to_string(h.same_counts[i]),
                          std::to_string(h.different_counts[i])});
    }
  }
  return out;
}

namespace {

std::vector<std::string> point_row(const DesignPoint& p, const EvalOptions& options) {
  std::vector<std::string> row;
  row.push_back(p.arch);
  row.push_back(p.scheme.tag());
  row.push_back(to_string(p.modality));
  row.push_back(p.processor);
  row.push_back(p.cores > 0 ? std::to_string(p.cores) : "");
  row.push_back(p.feasible ? "true" : "false");
  row.push_back(std::to_string(p.metrics.param_bytes));
  row.push_back(std::to_string(p.metrics.peak_bytes));
  row.push_back(std::to_string(p.metrics.flash_required_bytes));
  if (p.feasible) {
    row.push_back(std::to_string(p.board.psram->capacity_mb));
    row.push_back(std::to_string(p.board.flash->capacity_mb));
    row.push_back(std::to_string(p.metrics.cost_cents));
    row.push_back(fmt_seconds(p.metrics.latency_s));
  } else {
    row.insert(row.end(), 4, "");
  }
  row.push_back(p.metrics.eer_pct ? fmt_pct(*p.metrics.eer_pct) : "");
  for (double far : options.far_pct) {
    auto it = p.metrics.frr_pct_at_far.find(far);
    row.push_back(it != p.metrics.frr_pct_at_far.end() ? fmt_pct(it->second) : "");
  }
  for (double far : options.far_pct) {
    auto it = p.metrics.effective_latency_s_at_far.find(far);
    row.push_back(it != p.metrics.effective_latency_s_at_far.end() ? fmt_seconds(it->second)
                                                                   : "");
  }
  row.push_back(p.infeasible_reason);
  return row;
}

std::vector<std::string> point_columns(const EvalOptions& options) {
  std::vector<std::string> cols = {"arch",        "scheme",     "modality",
                                   "processor",   "cores",      "feasible",
                                   "param_bytes", "peak_bytes", "flash_required_bytes",
                                   "psram_mb",    "flash_mb",   "cost_cents",
                                   "latency_s",   "eer_pct"};
  for (double far : options.far_pct) cols.push_back("frr_at_far_" + far_tag(far) + "_pct");
  for (double far : options.far_pct)
    cols.push_back("effective_latency_s_at_far_" + far_tag(far));
  cols.push_back("note");
  return cols;
}

}  // namespace

Report points_report(const std::vector<DesignPoint>& points, const EvalOptions& options) {
  Report out;
  out.columns = point_columns(options);
  for (const DesignPoint& p : points) out.rows.push_back(point_row(p, options));
  return out;
}

Report front_report(const ExploreResult& result, const Front& front,
                    const EvalOptions& options) {
  Report out;
  out.columns = point_columns(options);
  for (std::size_t idx : front.point_indices)
    out.rows.push_back(point_row(result.points[idx], options));
  return out;
}

}  // namespace tinydse
