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

#include "tinydse/bioeval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "tinydse/csv.hpp"
#include "tinydse/errors.hpp"

namespace tinydse {

Embedding Embedding::normalized() const {
  double sq = 0;
  for (double v : values) sq += v * v;
  if (!(sq > 0)) throw ValidationError("cannot normalize a zero embedding");
  double norm = std::sqrt(sq);
  Embedding out{values, modality};
  for (double& v : out.values) v /= norm;
  return out;
}

double distance(const Embedding& a, const Embedding& b) {
  if (a.values.size() != b.values.size())
    throw ValidationError("embedding dimension mismatch: " +
                          std::to_string(a.values.size()) + " vs " +
                          std::to_string(b.values.size()));
  double sq = 0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    double d = a.values[i] - b.values[i];
    sq += d * d;
  }
  return std::sqrt(sq);
}

double fuse_distance(const Embedding& face_enroll, const Embedding& face_probe,
                     const Embedding& voice_enroll, const Embedding& voice_probe) {
  if (face_enroll.values.size() != face_probe.values.size())
    throw ValidationError("face embedding dimension mismatch");
  if (voice_enroll.values.size() != voice_probe.values.size())
    throw ValidationError("voice embedding dimension mismatch");
  Embedding enroll, probe;
  enroll.values = face_enroll.values;
  enroll.values.insert(enroll.values.end(), voice_enroll.values.begin(),
                       voice_enroll.values.end());
  probe.values = face_probe.values;
  probe.values.insert(probe.values.end(), voice_probe.values.begin(),
                      voice_probe.values.end());
  return distance(enroll, probe);
}

RocCurve roc(const ScoreSet& scores, std::size_t granularity) {
  if (granularity == 0) granularity = kDefaultRocGranularity;
  if (granularity < 2)
    throw ValidationError("roc: granularity must be 0 (default) or >= 2");

  std::vector<double> same, diff;
  for (const ScorePair& p : scores) {
    if (!std::isfinite(p.dist) || p.dist < 0)
      throw ValidationError("roc: distances must be finite and >= 0");
    (p.same ? same : diff).push_back(p.dist);
  }
  if (same.empty() || diff.empty())
    throw EvalError("roc: need at least one same-label and one different-label pair");
  std::sort(same.begin(), same.end());
  std::sort(diff.begin(), diff.end());

  std::vector<double> uniq;
  uniq.reserve(same.size() + diff.size());
  uniq.insert(uniq.end(), same.begin(), same.end());
  uniq.insert(uniq.end(), diff.begin(), diff.end());
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());

  // Sweep at the lowest score (FAR 0), every midpoint, and past the top score
  // (FAR 1). Accept rule is dist < threshold, so ties reject.
  std::vector<double> thresholds;
  thresholds.reserve(uniq.size() + 1);
  thresholds.push_back(uniq.front());
  for (std::size_t i = 0; i + 1 < uniq.size(); ++i)
    thresholds.push_back(0.5 * (uniq[i] + uniq[i + 1]));
  thresholds.push_back(uniq.back() + 1.0);

  if (thresholds.size() > granularity) {
    std::vector<double> picked;
    picked.reserve(granularity);
    for (std::size_t i = 0; i < granularity; ++i) {
      std::size_t idx = i * (thresholds.size() - 1) / (granularity - 1);
      if (picked.empty() || thresholds[idx] > picked.back())
        picked.push_back(thresholds[idx]);
    }
    thresholds = std::move(picked);
  }

  RocCurve curve;
  curve.points.reserve(thresholds.size());
  for (double t : thresholds) {
    auto below_same = std::lower_bound(same.begin(), same.end(), t) - same.begin();
    auto below_diff = std::lower_bound(diff.begin(), diff.end(), t) - diff.begin();
    double far = static_cast<double>(below_diff) / static_cast<double>(diff.size());
    double frr = static_cast<double>(same.size() - below_same) /
                 static_cast<double>(same.size());
    curve.points.push_back({t, far, frr});
  }
  return curve;
}

double eer(const RocCurve& curve) {
  if (curve.points.empty()) throw EvalError("eer: empty curve");
  const auto& pts = curve.points;
  double first = pts.front().far - pts.front().frr;
  if (first >= 0) return std::clamp(0.5 * (pts.front().far + pts.front().frr), 0.0, 1.0);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    double d = pts[i].far - pts[i].frr;
    if (d < 0) continue;
    if (d == 0) return pts[i].far;
    const RocPoint& a = pts[i - 1];
    const RocPoint& b = pts[i];
    double denom = (b.far - a.far) - (b.frr - a.frr);
    double alpha = (a.frr - a.far) / denom;
    double at_far = a.far + alpha * (b.far - a.far);
    double at_frr = a.frr + alpha * (b.frr - a.frr);
    return std::clamp(0.5 * (at_far + at_frr), 0.0, 1.0);
  }
  // FAR stays below FRR over the whole sweep (possible only for hand-built
  // curves); report the closest point.
  return std::clamp(0.5 * (pts.back().far + pts.back().frr), 0.0, 1.0);
}

OperatingPoint frr_at_far(const RocCurve& curve, double far_target) {
  if (curve.points.empty()) throw EvalError("frr_at_far: empty curve");
  if (far_target < 0 || far_target > 1)
    throw ValidationError("frr_at_far: far_target must be in [0,1]");
  const RocPoint* best = nullptr;
  for (const RocPoint& p : curve.points)
    if (p.far <= far_target) best = &p;
  if (!best) best = &curve.points.front();  // strictest threshold
  return {best->threshold, best->frr};
}

Histogram histogram(const ScoreSet& scores, int bins, double lo, double hi) {
  if (bins < 1) throw ValidationError("histogram: bins must be >= 1");
  if (!(lo < hi)) throw ValidationError("histogram: range lo must be below hi");
  Histogram h;
  h.lo = lo;
  h.hi = hi;
  h.same_counts.assign(static_cast<std::size_t>(bins), 0);
  h.different_counts.assign(static_cast<std::size_t>(bins), 0);
  double width = (hi - lo) / bins;
  for (const ScorePair& p : scores) {
    auto bin = static_cast<std::int64_t>(std::floor((p.dist - lo) / width));
    bin = std::clamp<std::int64_t>(bin, 0, bins - 1);
    auto idx = static_cast<std::size_t>(bin);
    if (p.same)
      ++h.same_counts[idx];
    else
      ++h.different_counts[idx];
  }
  return h;
}

ScoreSet load_scores(std::istream& in, const std::string& source) {
  CsvTable table = read_csv(in, source);
  const std::vector<std::string> expected = {"label", "distance"};
  if (table.header != expected)
    throw ParseError(source + ": bad header, expected label,distance");
  ScoreSet scores;
  scores.reserve(table.rows.size());
  for (const CsvRow& row : table.rows) {
    ScorePair p;
    if (row.fields[0] == "same")
      p.same = true;
    else if (row.fields[0] == "different")
      p.same = false;
    else
      throw ParseError(source + ":" + std::to_string(row.line) +
                       ": label must be 'same' or 'different', got '" + row.fields[0] + "'");
    p.dist = parse_double_field(row.fields[1], table, row, "distance");
    if (!std::isfinite(p.dist) || p.dist < 0)
      throw ParseError(source + ":" + std::to_string(row.line) +
                       ": distance must be finite and >= 0");
    scores.push_back(p);
  }
  if (scores.empty()) throw ParseError(source + ": no scores");
  return scores;
}

ScoreSet load_scores_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  return load_scores(in, path);
}

std::vector<EmbeddingPair> load_embeddings(std::istream& in, const std::string& source) {
  CsvTable table = read_csv(in, source);
  if (table.header.size() < 5 || table.header[0] != "pair_id" ||
      table.header[1] != "label" || table.header[2] != "side" ||
      table.header[3] != "modality")
    throw ParseError(source + ": bad header, expected pair_id,label,side,modality,v0,...");
  for (std::size_t i = 4; i < table.header.size(); ++i)
    if (table.header[i] != "v" + std::to_string(i - 4))
      throw ParseError(source + ": value columns must be v0..v{d-1}, got '" +
                       table.header[i] + "'");

  std::map<std::string, EmbeddingPair> pairs;       // keyed by pair_id
  std::vector<std::string> order;                   // first-seen order
  std::map<std::string, std::size_t> modality_dim;  // modality -> dimension
  std::map<std::string, std::pair<bool, bool>> seen_sides;  // "pair|modality" -> (enroll, probe)

  for (const CsvRow& row : table.rows) {
    auto line_err = [&](const std::string& what) {
      return ParseError(source + ":" + std::to_string(row.line) + ": " + what);
    };
    const std::string& pair_id = row.fields[0];
    if (pair_id.empty()) throw line_err("empty pair_id");
    bool same;
    if (row.fields[1] == "same")
      same = true;
    else if (row.fields[1] == "different")
      same = false;
    else
      throw line_err("label must be 'same' or 'different', got '" + row.fields[1] + "'");
    const std::string& side = row.fields[2];
    if (side != "enroll" && side != "probe")
      throw line_err("side must be 'enroll' or 'probe', got '" + side + "'");
    const std::string& modality = row.fields[3];
    if (modality.empty()) throw line_err("empty modality");

    Embedding emb;
    emb.modality = modality;
    std::size_t i = 4;
    for (; i < row.fields.size() && !row.fields[i].empty(); ++i)
      emb.values.push_back(
          parse_double_field(row.fields[i], table, row, table.header[i]));
    for (; i < row.fields.size(); ++i)
      if (!row.fields[i].empty())
        throw line_err("gap in embedding values (empty field before " + table.header[i] + ")");
    if (emb.values.empty()) throw line_err("embedding has no values");

    auto [dim_it, fresh] = modality_dim.emplace(modality, emb.values.size());
    if (!fresh && dim_it->second != emb.values.size())
      throw line_err("modality '" + modality + "' dimension changed from " +
                     std::to_string(dim_it->second) + " to " +
                     std::to_string(emb.values.size()));

    auto [it, inserted] = pairs.emplace(pair_id, EmbeddingPair{pair_id, same, {}});
    if (inserted) order.push_back(pair_id);
    if (!inserted && it->second.same != same)
      throw line_err("pair '" + pair_id + "' has conflicting labels");

    auto& sides = seen_sides["" + pair_id + "|" + modality];
    bool& slot = side == "enroll" ? sides.first : sides.second;
    if (slot)
      throw line_err("duplicate " + side + " row for pair '" + pair_id +
                     "' modality '" + modality + "'");
    slot = true;
    auto& entry = it->second.by_modality[modality];
    (side == "enroll" ? entry.first : entry.second) = std::move(emb);
  }

  for (const auto& [key, sides] : seen_sides)
    if (!sides.first || !sides.second)
      throw ParseError(source + ": pair/modality '" + key + "' is missing its " +
                       (sides.first ? "probe" : "enroll") + " row");
  if (pairs.empty()) throw ParseError(source + ": no embedding pairs");

  std::vector<EmbeddingPair> out;
  out.reserve(order.size());
  for (const std::string& id : order) out.push_back(std::move(pairs[id]));
  return out;
}

std::vector<EmbeddingPair> load_embeddings_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  return load_embeddings(in, path);
}

std::map<std::string, ScoreSet> scores_from_pairs(const std::vector<EmbeddingPair>& pairs) {
  std::map<std::string, ScoreSet> out;
  for (const EmbeddingPair& pair : pairs) {
    Embedding enroll_cat, probe_cat;
    for (const auto& [modality, sides] : pair.by_modality) {
      out[modality].push_back({pair.same, distance(sides.first, sides.second)});
      enroll_cat.values.insert(enroll_cat.values.end(), sides.first.values.begin(),
                               sides.first.values.end());
      probe_cat.values.insert(probe_cat.values.end(), sides.second.values.begin(),
                              sides.second.values.end());
    }
    if (pair.by_modality.size() >= 2)
      out["fusion"].push_back({pair.same, distance(enroll_cat, probe_cat)});
  }
  return out;
}

}  // namespace tinydse
