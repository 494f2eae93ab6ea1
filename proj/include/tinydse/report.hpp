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

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tinydse/bioeval.hpp"
#include "tinydse/catalog.hpp"
#include "tinydse/dse.hpp"
#include "tinydse/footprint.hpp"
#include "tinydse/perf.hpp"

namespace tinydse {

// Deterministic number formatting: seconds 6 dp, percentages 3 dp, money in
// integer cents.
std::string fmt_seconds(double s);
std::string fmt_pct(double pct);
std::string fmt_double(double v);  // 6 dp, used for thresholds/distances

// A rectangular report; the one-to-one CSV/JSON mirror keeps cells as the
// already-formatted strings.
struct Report {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

std::string to_csv(const Report& report);
std::string to_json(const Report& report);  // array of column->value objects

enum class ReportFormat { csv, json };
std::string render(const Report& report, ReportFormat format);

Report size_summary_report(const SizeReport& report);
Report size_layers_report(const SizeReport& report);
Report cost_report(const CostBreakdown& breakdown);
Report latency_report(const PipelineLatency& latency);

struct EerReportEntry {
  std::string modality;
  double eer = 0;                                    // fraction
  std::vector<std::pair<double, OperatingPoint>> at_far;  // (far fraction, point)
};

Report eer_report(const std::vector<EerReportEntry>& entries);
Report histogram_report(const std::map<std::string, Histogram>& by_modality);

Report points_report(const std::vector<DesignPoint>& points, const EvalOptions& options);
Report front_report(const ExploreResult& result, const Front& front,
                    const EvalOptions& options);

}  // namespace tinydse
