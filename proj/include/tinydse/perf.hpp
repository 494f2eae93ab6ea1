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

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "tinydse/arch.hpp"
#include "tinydse/precision.hpp"

namespace tinydse {

enum class OpClass { conv, fc, elementwise, pool };
const char* to_string(OpClass op);
OpClass parse_op_class(const std::string& text);
OpClass op_class(LayerKind kind);

// Coefficient bucket per precision; xnor coefficients are calibrated at
// 1-bit activations x 1-bit weights and scale by a_bits * w_bits.
enum class CoeffClass { float32, fixed8, xnor_base };
const char* to_string(CoeffClass c);
CoeffClass parse_coeff_class(const std::string& text);
CoeffClass coeff_class(const PrecisionScheme& scheme);

// Calibration table: nanoseconds per operation keyed by (op class, precision
// class), plus per-modality preprocessing seconds. Preprocessing defaults:
// face 0.12 s (image capture/resize), voice 3.0 s (audio acquisition);
// both overridable from the coefficients file.
class LatencyCoeffs {
 public:
  LatencyCoeffs();

  void set(OpClass op, CoeffClass c, double ns_per_op);  // must be > 0
  bool has(OpClass op, CoeffClass c) const;
  // Throws ConfigError naming the missing (op_class, precision_class) pair.
  double ns_per_op(OpClass op, CoeffClass c) const;

  void set_preprocess(const std::string& modality, double seconds);
  double preprocess_seconds(const std::string& modality) const;  // 0 when unknown
  const std::map<std::string, double>& preprocess_map() const { return preprocess_s_; }

  // CSV header: op_class,precision_class,ns_per_op. Optional rows
  // "preprocess,<modality>,<seconds>" override the preprocessing constants.
  static LatencyCoeffs load(std::istream& in, const std::string& source);
  static LatencyCoeffs load_file(const std::string& path);

 private:
  std::map<std::pair<int, int>, double> ns_;
  std::map<std::string, double> preprocess_s_;
};

// Sum over layers of opcount x ns_per_op, as seconds. For xnor schemes the
// a_bits * w_bits factor is applied once to the summed base latency, so
// latency(a,w) == a*w * latency(1,1) holds bit-exactly.
double model_latency(const ArchGraph& graph, const PrecisionScheme& scheme,
                     const LatencyCoeffs& coeffs);

struct Branch {
  std::string modality;
  double compute_s = 0;
};

struct BranchLatency {
  std::string modality;
  double compute_s = 0;
  int core = 0;
};

struct PipelineLatency {
  std::vector<BranchLatency> branches;
  double compute_s = 0;  // schedule makespan
  // Per-modality acquisition/preprocessing time; empty unless included.
  std::map<std::string, double> preprocess_by_modality;
  double preprocess_s = 0;  // sum of the above
  double total_s = 0;
};

// Longest-processing-time list scheduling of the branches onto `cores`
// workers; a single branch always occupies one core (no intra-model
// parallelism). Preprocessing time, when included, is the serial sum over
// the distinct modalities present.
PipelineLatency system_latency(const std::vector<Branch>& branches, int cores,
                               const std::map<std::string, double>& preprocess_s,
                               bool include_preprocessing);

// Expected total time over repeated independent attempts with per-attempt
// rejection probability frr: latency / (1 - frr).
double effective_latency(double latency_s, double frr);

}  // namespace tinydse
