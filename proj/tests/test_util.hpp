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
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <unistd.h>
#include <string>
#include <vector>

#include "tinydse/arch.hpp"
#include "tinydse/bioeval.hpp"

namespace tinydse::testutil {

// ---- independent parameter-count oracle ------------------------------------
//
// Walks the construction rule and enumerates every weight tensor's shape,
// then sums the tensor sizes. Kept deliberately separate from the graph
// builder: it never touches LayerNode.

inline std::int64_t tensor_elems(const std::vector<std::int64_t>& dims) {
  std::int64_t n = 1;
  for (std::int64_t d : dims) n *= d;
  return n;
}

inline std::vector<std::vector<std::int64_t>> weight_tensors(const ArchSpec& s) {
  std::vector<std::vector<std::int64_t>> tensors;
  auto conv = [&](std::int64_t cin, std::int64_t cout, std::int64_t k) {
    tensors.push_back({k, k, cin, cout});
    tensors.push_back({cout});  // bn scale
    tensors.push_back({cout});  // bn shift
  };
  conv(s.input_c, s.base_channels, 7);
  std::int64_t cin = s.base_channels;
  for (std::size_t i = 0; i < s.stage_blocks.size(); ++i) {
    std::int64_t c = std::int64_t{s.base_channels} << i;
    for (int b = 0; b < s.stage_blocks[i]; ++b) {
      bool strided = b == 0 && i > 0;
      conv(cin, c, 3);
      conv(c, c, 3);
      if (strided || cin != c) conv(cin, c, 1);  // shortcut downsample + bn
      cin = c;
    }
  }
  tensors.push_back({cin, s.embedding_dim});
  tensors.push_back({s.embedding_dim});  // fc bias
  return tensors;
}

inline std::int64_t oracle_param_count(const ArchSpec& s) {
  std::int64_t total = 0;
  for (const auto& t : weight_tensors(s)) total += tensor_elems(t);
  return total;
}

// ---- random spec generation -------------------------------------------------

inline ArchSpec random_spec(std::mt19937& rng, int index) {
  std::uniform_int_distribution<int> stages(1, 3), blocks(1, 3), base_pick(0, 3),
      dim(40, 128), emb(8, 256), stem_pick(0, 1);
  ArchSpec s;
  s.name = "rand" + std::to_string(index);
  int n = stages(rng);
  for (int i = 0; i < n; ++i) s.stage_blocks.push_back(blocks(rng));
  s.base_channels = 8 << base_pick(rng);
  s.input_h = dim(rng);
  s.input_w = dim(rng);
  s.input_c = 3;
  s.embedding_dim = emb(rng);
  s.stem = stem_pick(rng) ? StemVariant::modified : StemVariant::standard;
  return s;
}

// ---- score helpers ----------------------------------------------------------

inline ScoreSet make_scores(const std::vector<double>& same,
                            const std::vector<double>& different) {
  ScoreSet out;
  for (double d : same) out.push_back({true, d});
  for (double d : different) out.push_back({false, d});
  return out;
}

// ---- exhaustive FAR/FRR oracle ----------------------------------------------
//
// Direct counting at a threshold, one pass over every score.

inline double oracle_far(const ScoreSet& scores, double t) {
  std::int64_t below = 0, total = 0;
  for (const ScorePair& p : scores)
    if (!p.same) {
      ++total;
      if (p.dist < t) ++below;
    }
  return static_cast<double>(below) / static_cast<double>(total);
}

inline double oracle_frr(const ScoreSet& scores, double t) {
  std::int64_t at_or_above = 0, total = 0;
  for (const ScorePair& p : scores)
    if (p.same) {
      ++total;
      if (p.dist >= t) ++at_or_above;
    }
  return static_cast<double>(at_or_above) / static_cast<double>(total);
}

// ---- scratch directories ----------------------------------------------------

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("tinydse_" + tag + "_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name, const std::string& contents) const {
    auto p = path_ / name;
    std::ofstream out(p);
    out << contents;
    return p.string();
  }

 private:
  std::filesystem::path path_;
};

template <typename E, typename F>
std::string caught_message(F&& fn) {
  try {
    fn();
  } catch (const E& e) {
    return e.what();
  }
  return "";
}

}  // namespace tinydse::testutil
