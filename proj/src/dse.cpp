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

#include "tinydse/dse.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "tinydse/csv.hpp"
#include "tinydse/errors.hpp"

namespace tinydse {

const char* to_string(Modality m) {
  switch (m) {
    case Modality::face: return "face";
    case Modality::voice: return "voice";
    case Modality::fusion: return "fusion";
  }
  return "?";
}

Modality parse_modality(const std::string& text) {
  if (text == "face") return Modality::face;
  if (text == "voice") return Modality::voice;
  if (text == "fusion") return Modality::fusion;
  throw ValidationError("unknown modality: '" + text + "'");
}

std::vector<std::string> required_sensors(Modality m) {
  switch (m) {
    case Modality::face: return {"camera"};
    case Modality::voice: return {"microphone"};
    case Modality::fusion: return {"camera", "microphone"};
  }
  return {};
}

namespace {

std::string results_key(const std::string& arch, const std::string& scheme_tag,
                        const std::string& modality) {
  return arch + "|" + scheme_tag + "|" + modality;
}

}  // namespace

ResultsTable ResultsTable::load(std::istream& in, const std::string& source) {
  CsvTable table = read_csv(in, source);
  if (table.header.size() < 4 || table.header[0] != "arch" ||
      table.header[1] != "scheme" || table.header[2] != "modality" ||
      table.header[3] != "eer_pct")
    throw ParseError(source +
                     ": bad header, expected arch,scheme,modality,eer_pct,"
                     "frr_at_far_<far>_pct,...");
  // Remaining columns carry FRR values at fixed FAR percentages.
  std::vector<std::pair<std::size_t, double>> frr_columns;
  for (std::size_t i = 4; i < table.header.size(); ++i) {
    const std::string& col = table.header[i];
    const std::string prefix = "frr_at_far_";
    const std::string suffix = "_pct";
    if (col.size() <= prefix.size() + suffix.size() || col.rfind(prefix, 0) != 0 ||
        col.compare(col.size() - suffix.size(), suffix.size(), suffix) != 0)
      throw ParseError(source + ": unexpected column '" + col + "'");
    std::string tag = col.substr(prefix.size(), col.size() - prefix.size() - suffix.size());
    std::replace(tag.begin(), tag.end(), '_', '.');
    try {
      std::size_t pos = 0;
      double far = std::stod(tag, &pos);
      if (pos != tag.size() || far <= 0 || far >= 100) throw std::invalid_argument(tag);
      frr_columns.emplace_back(i, far);
    } catch (const std::exception&) {
      throw ParseError(source + ": cannot parse FAR from column '" + col + "'");
    }
  }

  ResultsTable results;
  for (const CsvRow& row : table.rows) {
    try {
      PrecisionScheme::parse(row.fields[1]);
      parse_modality(row.fields[2]);
    } catch (const ValidationError& e) {
      throw ParseError(source + ":" + std::to_string(row.line) + ": " + e.what());
    }
    ResultsRow r;
    r.eer_pct = parse_double_field(row.fields[3], table, row, "eer_pct");
    if (r.eer_pct < 0 || r.eer_pct > 100)
      throw ParseError(source + ":" + std::to_string(row.line) +
                       ": eer_pct must be in [0,100]");
    for (auto [idx, far] : frr_columns) {
      if (row.fields[idx].empty()) continue;  // absent operating point
      double frr = parse_double_field(row.fields[idx], table, row, table.header[idx]);
      if (frr < 0 || frr > 100)
        throw ParseError(source + ":" + std::to_string(row.line) + ": " +
                         table.header[idx] + " must be in [0,100]");
      r.frr_pct_at_far[far] = frr;
    }
    std::string key = results_key(row.fields[0], row.fields[1], row.fields[2]);
    if (!results.rows_.emplace(key, std::move(r)).second)
      throw ParseError(source + ":" + std::to_string(row.line) +
                       ": duplicate results row for (" + row.fields[0] + ", " +
                       row.fields[1] + ", " + row.fields[2] + ")");
  }
  return results;
}

ResultsTable ResultsTable::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  return load(in, path);
}

const ResultsRow* ResultsTable::find(const std::string& arch,
                                     const std::string& scheme_tag,
                                     Modality modality) const {
  auto it = rows_.find(results_key(arch, scheme_tag, to_string(modality)));
  return it == rows_.end() ? nullptr : &it->second;
}

std::string DesignPoint::key() const {
  return arch + "/" + scheme.tag() + "/" + to_string(modality) + "/" + processor;
}

std::vector<DesignPoint> enumerate_space(const std::vector<ArchSpec>& archs,
                                         const std::vector<PrecisionScheme>& schemes,
                                         const std::vector<Modality>& modalities,
                                         const std::vector<std::string>& processors) {
  if (archs.empty()) throw ConfigError("enumerate_space: no architectures");
  if (schemes.empty()) throw ConfigError("enumerate_space: no precision schemes");
  if (modalities.empty()) throw ConfigError("enumerate_space: no modalities");
  if (processors.empty()) throw ConfigError("enumerate_space: no processors");
  std::vector<DesignPoint> points;
  points.reserve(archs.size() * schemes.size() * modalities.size() * processors.size());
  for (const ArchSpec& arch : archs)
    for (const PrecisionScheme& scheme : schemes)
      for (Modality modality : modalities)
        for (const std::string& processor : processors) {
          DesignPoint p;
          p.arch = arch.name;
          p.scheme = scheme;
          p.modality = modality;
          p.processor = processor;
          points.push_back(std::move(p));
        }
  return points;
}

DesignPoint evaluate(DesignPoint point, const ArchGraph& graph,
                     const PartCatalog& catalog, const LatencyCoeffs& coeffs,
                     const ResultsTable* results, const EvalOptions& options) {
  if (graph.spec.name != point.arch)
    throw ConfigError("evaluate: graph is for '" + graph.spec.name +
                      "', point wants '" + point.arch + "'");
  bool fusion = point.modality == Modality::fusion;
  MetricVector& m = point.metrics;

  std::int64_t branch_params = param_bytes(graph, point.scheme);
  std::int64_t branch_peak = peak_memory_bytes(graph, point.scheme);
  // Fusion carries two weight sets in one program image; branches run
  // back-to-back per core, so peak memory is the max branch peak by default.
  m.param_bytes = fusion ? 2 * branch_params : branch_params;
  m.peak_bytes = fusion && options.fusion_peak_sum ? 2 * branch_peak : branch_peak;
  m.flash_required_bytes = flash_required_bytes(m.param_bytes, options.code_size_bytes);

  const Part* processor = catalog.find(PartKind::processor, point.processor);
  if (!processor) {
    point.feasible = false;
    point.infeasible_reason = "processor '" + point.processor + "' not in catalog";
    return point;
  }
  point.cores = processor->cores;

  double branch_s = model_latency(graph, point.scheme, coeffs);
  std::vector<Branch> branches;
  if (fusion)
    branches = {{"face", branch_s}, {"voice", branch_s}};
  else
    branches = {{to_string(point.modality), branch_s}};
  PipelineLatency pipeline = system_latency(branches, point.cores, coeffs.preprocess_map(),
                                            options.include_preprocessing);
  m.latency_s = pipeline.total_s;

  try {
    BoardRequirements req;
    req.flash_bytes = m.flash_required_bytes;
    req.psram_bytes = m.peak_bytes;
    req.sensors = required_sensors(point.modality);
    req.min_cores = processor->cores;
    req.processor = point.processor;
    point.board = min_board(catalog, req);
  } catch (const InfeasibleError& e) {
    point.feasible = false;
    point.infeasible_reason = e.what();
    return point;
  }
  m.cost_cents = board_cost(point.board).total_cents;

  if (results) {
    const ResultsRow* row = results->find(point.arch, point.scheme.tag(), point.modality);
    if (row) {
      m.eer_pct = row->eer_pct;
      for (double far : options.far_pct) {
        auto it = row->frr_pct_at_far.find(far);
        if (it == row->frr_pct_at_far.end()) continue;
        m.frr_pct_at_far[far] = it->second;
        if (it->second < 100)
          m.effective_latency_s_at_far[far] =
              effective_latency(m.latency_s, it->second / 100.0);
      }
    }
  }
  return point;
}

std::vector<std::size_t> pareto_front(const std::vector<XY>& points) {
  std::vector<std::size_t> order(points.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (points[a].x != points[b].x) return points[a].x < points[b].x;
    if (points[a].y != points[b].y) return points[a].y < points[b].y;
    return a < b;
  });

  std::vector<std::size_t> front;
  double best_y_before = std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && points[order[j]].x == points[order[i]].x) ++j;
    double group_min_y = points[order[i]].y;
    for (std::size_t k = i; k < j; ++k) {
      double y = points[order[k]].y;
      // Dominated by a strictly-cheaper-x point with y <= ours, or by a
      // same-x point with strictly smaller y.
      if (!(best_y_before <= y) && !(group_min_y < y)) front.push_back(order[k]);
    }
    best_y_before = std::min(best_y_before, group_min_y);
    i = j;
  }
  return front;
}

const char* to_string(MetricId id) {
  switch (id) {
    case MetricId::param_bytes: return "param_bytes";
    case MetricId::peak_bytes: return "peak_bytes";
    case MetricId::cost_cents: return "cost_cents";
    case MetricId::latency_s: return "latency_s";
    case MetricId::eer_pct: return "eer_pct";
    case MetricId::effective_latency_s: return "effective_latency_s";
  }
  return "?";
}

std::optional<double> metric_value(const DesignPoint& point, MetricId id, double far_pct) {
  switch (id) {
    case MetricId::param_bytes: return static_cast<double>(point.metrics.param_bytes);
    case MetricId::peak_bytes: return static_cast<double>(point.metrics.peak_bytes);
    case MetricId::cost_cents:
      if (!point.feasible) return std::nullopt;
      return static_cast<double>(point.metrics.cost_cents);
    case MetricId::latency_s:
      if (!point.feasible) return std::nullopt;
      return point.metrics.latency_s;
    case MetricId::eer_pct:
      if (!point.feasible) return std::nullopt;
      return point.metrics.eer_pct;
    case MetricId::effective_latency_s: {
      if (!point.feasible) return std::nullopt;
      auto it = point.metrics.effective_latency_s_at_far.find(far_pct);
      if (it == point.metrics.effective_latency_s_at_far.end()) return std::nullopt;
      return it->second;
    }
  }
  return std::nullopt;
}

std::vector<std::size_t> pareto_front_points(const std::vector<DesignPoint>& points,
                                             MetricId x_metric, MetricId y_metric,
                                             double far_pct) {
  std::vector<XY> xy(points.size());
  std::vector<std::string> offenders;
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto x = metric_value(points[i], x_metric, far_pct);
    auto y = metric_value(points[i], y_metric, far_pct);
    if (!x || !y) {
      offenders.push_back(points[i].key());
      continue;
    }
    xy[i] = {*x, *y};
  }
  if (!offenders.empty()) {
    std::ostringstream msg;
    msg << "pareto_front: metric (" << to_string(x_metric) << " or "
        << to_string(y_metric) << ") missing on " << offenders.size() << " point(s):";
    for (const std::string& k : offenders) msg << " " << k;
    throw EvalError(msg.str());
  }
  auto front = pareto_front(xy);
  std::sort(front.begin(), front.end(), [&](std::size_t a, std::size_t b) {
    if (xy[a].x != xy[b].x) return xy[a].x < xy[b].x;
    return points[a].key() < points[b].key();
  });
  return front;
}

namespace {

std::string far_tag(double far_pct) {
  std::ostringstream out;
  out << far_pct;
  std::string tag = out.str();
  std::replace(tag.begin(), tag.end(), '.', '_');
  return tag;
}

}  // namespace

ExploreResult explore(const std::vector<ArchSpec>& archs,
                      const std::vector<PrecisionScheme>& schemes,
                      const std::vector<Modality>& modalities,
                      const std::vector<std::string>& processors,
                      const PartCatalog& catalog, const LatencyCoeffs& coeffs,
                      const ResultsTable* results, const EvalOptions& options) {
  ExploreResult result;

  std::map<std::string, ArchGraph> graphs;
  for (const ArchSpec& spec : archs) {
    if (graphs.count(spec.name))
      throw ConfigError("explore: duplicate architecture name '" + spec.name + "'");
    graphs.emplace(spec.name, build_arch(spec));
  }

  result.points = enumerate_space(archs, schemes, modalities, processors);
  for (DesignPoint& p : result.points)
    p = evaluate(std::move(p), graphs.at(p.arch), catalog, coeffs, results, options);

  std::size_t infeasible = 0;
  for (const DesignPoint& p : result.points)
    if (!p.feasible) ++infeasible;
  if (infeasible)
    result.warnings.push_back(std::to_string(infeasible) +
                              " point(s) infeasible; excluded from fronts");

  auto add_front = [&](const std::string& name, MetricId x, MetricId y, double far) {
    std::vector<std::size_t> eligible;
    std::size_t missing = 0;
    for (std::size_t i = 0; i < result.points.size(); ++i) {
      const DesignPoint& p = result.points[i];
      if (!p.feasible) continue;
      if (metric_value(p, x, far) && metric_value(p, y, far))
        eligible.push_back(i);
      else
        ++missing;
    }
    if (missing)
      result.warnings.push_back(std::to_string(missing) +
                                " point(s) lack a metric for front '" + name +
                                "'; excluded");
    if (eligible.empty()) {
      result.warnings.push_back("front '" + name + "' is empty");
      return;
    }
    std::vector<XY> xy;
    xy.reserve(eligible.size());
    for (std::size_t i : eligible)
      xy.push_back({*metric_value(result.points[i], x, far),
                    *metric_value(result.points[i], y, far)});
    std::vector<std::size_t> local = pareto_front(xy);
    Front front{name, x, y, far, {}};
    front.point_indices.reserve(local.size());
    for (std::size_t l : local) front.point_indices.push_back(eligible[l]);
    std::sort(front.point_indices.begin(), front.point_indices.end(),
              [&](std::size_t a, std::size_t b) {
                double xa = *metric_value(result.points[a], x, far);
                double xb = *metric_value(result.points[b], x, far);
                if (xa != xb) return xa < xb;
                return result.points[a].key() < result.points[b].key();
              });
    result.fronts.push_back(std::move(front));
  };

  if (results) {
    add_front("eer_vs_param_bytes", MetricId::param_bytes, MetricId::eer_pct, 0);
    add_front("eer_vs_latency_s", MetricId::latency_s, MetricId::eer_pct, 0);
    add_front("eer_vs_cost_cents", MetricId::cost_cents, MetricId::eer_pct, 0);
    for (double far : options.far_pct)
      add_front("cost_vs_effective_latency_far_" + far_tag(far), MetricId::cost_cents,
                MetricId::effective_latency_s, far);
  } else {
    result.warnings.push_back(
        "no results table given; EER and effective-latency fronts skipped");
  }
  return result;
}

}  // namespace tinydse
