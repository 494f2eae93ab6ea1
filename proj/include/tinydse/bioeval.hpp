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
#include <string>
#include <utility>
#include <vector>

namespace tinydse {

struct Embedding {
  std::vector<double> values;
  std::string modality;

  // Scaled to unit Euclidean norm. Throws ValidationError on a zero vector.
  Embedding normalized() const;
};

// Euclidean distance; throws ValidationError on dimension mismatch.
double distance(const Embedding& a, const Embedding& b);

// Distance between the concatenations (face ++ voice) of enroll and probe
// embeddings. Concatenation is not re-normalized. Satisfies
// fused^2 == d_face^2 + d_voice^2.
double fuse_distance(const Embedding& face_enroll, const Embedding& face_probe,
                     const Embedding& voice_enroll, const Embedding& voice_probe);

struct ScorePair {
  bool same = false;     // label: same identity vs different
  double dist = 0;       // finite, >= 0
};

using ScoreSet = std::vector<ScorePair>;

struct RocPoint {
  double threshold = 0;
  double far = 0;  // fraction of different-label pairs with dist < threshold
  double frr = 0;  // fraction of same-label pairs with dist >= threshold
};

// Thresholds strictly increasing; far non-decreasing and frr non-increasing
// along the sweep.
struct RocCurve {
  std::vector<RocPoint> points;
};

inline constexpr std::size_t kDefaultRocGranularity = 100000;

// FAR/FRR sweep over all midpoints between consecutive distinct scores plus
// both extremes. A pair is accepted when dist < threshold (ties reject).
// granularity caps the sweep length (0 = default cap of 100000); beyond the
// cap thresholds are subsampled at uniform quantiles.
RocCurve roc(const ScoreSet& scores, std::size_t granularity = 0);

// FAR/FRR crossover, linearly interpolated between adjacent sweep points
// when there is no exact crossing.
double eer(const RocCurve& curve);

struct OperatingPoint {
  double threshold = 0;
  double frr = 0;
};

// Largest threshold whose FAR does not exceed far_target, with its FRR.
OperatingPoint frr_at_far(const RocCurve& curve, double far_target);

struct Histogram {
  double lo = 0;
  double hi = 0;
  std::vector<std::int64_t> same_counts;
  std::vector<std::int64_t> different_counts;
};

// Left-closed bins over [lo, hi); out-of-range scores clamp to the end bins.
Histogram histogram(const ScoreSet& scores, int bins, double lo, double hi);

// Scores file: header "label,distance", label in {same,different}.
ScoreSet load_scores(std::istream& in, const std::string& source);
ScoreSet load_scores_file(const std::string& path);

struct EmbeddingPair {
  std::string pair_id;
  bool same = false;
  // modality -> (enroll, probe)
  std::map<std::string, std::pair<Embedding, Embedding>> by_modality;
};

// Embeddings file: header "pair_id,label,side,modality,v0,...,v{d-1}"
// with side in {enroll,probe}. Dimension is inferred from the contiguous
// non-empty value columns and must be constant per modality.
std::vector<EmbeddingPair> load_embeddings(std::istream& in, const std::string& source);
std::vector<EmbeddingPair> load_embeddings_file(const std::string& path);

// Per-modality distance score sets, plus a "fusion" set (concatenation over
// the pair's modalities in name order) for every pair carrying two or more
// modalities.
std::map<std::string, ScoreSet> scores_from_pairs(const std::vector<EmbeddingPair>& pairs);

}  // namespace tinydse
