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
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tinydse/arch.hpp"
#include "tinydse/catalog.hpp"
#include "tinydse/footprint.hpp"
#include "tinydse/perf.hpp"
#include "tinydse/precision.hpp"

namespace tinydse {

enum class Modality { face, voice, fusion };
const char* to_string(Modality m);
Modality parse_modality(const std::string& text);
// face -> {camera}, voice -> {microphone}, fusion -> {camera, microphone}.
std::vector<std::string> required_sensors(Modality m);

struct ResultsRow {
  double eer_pct = 0;
  std::map<double, double> frr_pct_at_far;  // FAR percent -> FRR percent
};

// Measured accuracy, keyed by (arch, scheme tag, modality). Header:
//   arch,scheme,modality,eer_pct,frr_at_far_1_pct,frr_at_far_5_pct,frr_at_far_10_pct
// (any set of frr_at_far_<far>_pct columns is accepted).
class ResultsTable {
 public:
  static ResultsTable load(std::istream& in, const std::string& source);
  static ResultsTable load_file(const std::string& path);

  const ResultsRow* find(const std::string& arch, const std::string& scheme_tag,
                         Modality modality) const;
  std::size_t size() const { return rows_.size(); }

 private:
  std::map<std::string, ResultsRow> rows_;  // key "arch|scheme|modality"
};

struct MetricVector {
  std::int64_t param_bytes = 0;
  std::int64_t peak_bytes = 0;
  std::int64_t flash_required_bytes = 0;
  std::int64_t cost_cents = 0;
  double latency_s = 0;
  std::optional<double> eer_pct;
  std::map<double, double> frr_pct_at_far;           // FAR percent -> FRR percent
  std::map<double, double> effective_latency_s_at_far;
};

struct DesignPoint {
  std::string arch;
  PrecisionScheme scheme;
  Modality modality = Modality::face;
  std::string processor;
  int cores = 0;
  BoardConfig board;
  MetricVector metrics;
  bool feasible = true;
  std::string infeasible_reason;

  std::string key() const;  // "arch/scheme/modality/processor"
};

struct EvalOptions {
  std::int64_t code_size_bytes = kDefaultCodeSizeBytes;
  bool include_preprocessing = false;
  std::vector<double> far_pct = {1, 5, 10};
  // Fusion peak memory: max of the branch peaks by default (branches run
  // back-to-back per core and reuse buffers); true sums them instead.
  bool fusion_peak_sum = false;
};

// Full Cartesian product of the inputs, as unevaluated skeletons, in input
// order (arch-major, processor-minor).
std::vector<DesignPoint> enumerate_space(const std::vector<ArchSpec>& archs,
                                         const std::vector<PrecisionScheme>& schemes,
                                         const std::vector<Modality>& modalities,
                                         const std::vector<std::string>& processors);

// Fills in footprint, board, cost and latency metrics, joining accuracy rows
// when a results table is given. Fusion runs the architecture on both
// branches: double param storage, max (or summed) peak, branch scheduling on
// the processor's cores. An unsatisfiable board marks the point infeasible
// rather than throwing.
DesignPoint evaluate(DesignPoint point, const ArchGraph& graph,
                     const PartCatalog& catalog, const LatencyCoeffs& coeffs,
                     const ResultsTable* results, const EvalOptions& options);

struct XY {
  double x = 0;
  double y = 0;
};

// Indices of the non-dominated points (both metrics minimized; points tied
// on both metrics are all retained), sorted by x then y then index.
std::vector<std::size_t> pareto_front(const std::vector<XY>& points);

enum class MetricId { param_bytes, peak_bytes, cost_cents, latency_s, eer_pct, effective_latency_s };
const char* to_string(MetricId id);

// far_pct only matters for effective_latency_s. nullopt when the metric was
// never joined onto the point.
std::optional<double> metric_value(const DesignPoint& point, MetricId id, double far_pct = 0);

// Front over two metrics of evaluated points. Throws EvalError listing the
// offending points when a metric is missing on any of them.
std::vector<std::size_t> pareto_front_points(const std::vector<DesignPoint>& points,
                                             MetricId x_metric, MetricId y_metric,
                                             double far_pct = 0);

struct Front {
  std::string name;        // e.g. "eer_vs_cost_cents" or "cost_vs_effective_latency_far_1"
  MetricId x_metric;
  MetricId y_metric;
  double far_pct = 0;                      // for effective-latency fronts
  std::vector<std::size_t> point_indices;  // into ExploreResult::points, sorted by x then key
};

struct ExploreResult {
  std::vector<DesignPoint> points;
  std::vector<Front> fronts;
  std::vector<std::string> warnings;
};

// Evaluates the whole space and extracts the standard front pairings:
// EER vs param size / latency / cost, and cost vs effective latency at each
// configured FAR. EER-axis fronts are skipped (with a warning) when no
// results table is given; points without a matching accuracy row are
// excluded from them.
ExploreResult explore(const std::vector<ArchSpec>& archs,
                      const std::vector<PrecisionScheme>& schemes,
                      const std::vector<Modality>& modalities,
                      const std::vector<std::string>& processors,
                      const PartCatalog& catalog, const LatencyCoeffs& coeffs,
                      const ResultsTable* results, const EvalOptions& options);

}  // namespace tinydse
