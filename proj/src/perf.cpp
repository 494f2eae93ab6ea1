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

#include "tinydse/perf.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>

#include "tinydse/csv.hpp"
#include "tinydse/errors.hpp"

namespace tinydse {

const char* to_string(OpClass op) {
  switch (op) {
    case OpClass::conv: return "conv";
    case OpClass::fc: return "fc";
    case OpClass::elementwise: return "elementwise";
    case OpClass::pool: return "pool";
  }
  return "?";
}

OpClass parse_op_class(const std::string& text) {
  if (text == "conv") return OpClass::conv;
  if (text == "fc") return OpClass::fc;
  if (text == "elementwise") return OpClass::elementwise;
  if (text == "pool") return OpClass::pool;
  throw ValidationError("unknown op class: '" + text + "'");
}

OpClass op_class(LayerKind kind) {
  switch (kind) {
    case LayerKind::conv: return OpClass::conv;
    case LayerKind::fc: return OpClass::fc;
    case LayerKind::maxpool:
    case LayerKind::avgpool: return OpClass::pool;
    case LayerKind::batchnorm:
    case LayerKind::relu:
    case LayerKind::residual_add: return OpClass::elementwise;
  }
  return OpClass::elementwise;
}

const char* to_string(CoeffClass c) {
  switch (c) {
    case CoeffClass::float32: return "float32";
    case CoeffClass::fixed8: return "fixed8";
    case CoeffClass::xnor_base: return "xnor_base";
  }
  return "?";
}

CoeffClass parse_coeff_class(const std::string& text) {
  if (text == "float32") return CoeffClass::float32;
  if (text == "fixed8") return CoeffClass::fixed8;
  if (text == "xnor_base") return CoeffClass::xnor_base;
  throw ValidationError("unknown precision class: '" + text + "'");
}

CoeffClass coeff_class(const PrecisionScheme& scheme) {
  switch (scheme.cls) {
    case PrecisionClass::float32: return CoeffClass::float32;
    case PrecisionClass::fixed8: return CoeffClass::fixed8;
    case PrecisionClass::xnor: return CoeffClass::xnor_base;
  }
  return CoeffClass::float32;
}

LatencyCoeffs::LatencyCoeffs() {
  preprocess_s_["face"] = 0.12;  // image capture, crop and resize
  preprocess_s_["voice"] = 3.0;  // dominated by the 3-second acquisition window
}

void LatencyCoeffs::set(OpClass op, CoeffClass c, double ns_per_op) {
  if (!(ns_per_op > 0))
    throw ValidationError(std::string("latency coefficient (") + to_string(op) + ", " +
                          to_string(c) + ") must be > 0");
  ns_[{static_cast<int>(op), static_cast<int>(c)}] = ns_per_op;
}

bool LatencyCoeffs::has(OpClass op, CoeffClass c) const {
  return ns_.count({static_cast<int>(op), static_cast<int>(c)}) != 0;
}

double LatencyCoeffs::ns_per_op(OpClass op, CoeffClass c) const {
  auto it = ns_.find({static_cast<int>(op), static_cast<int>(c)});
  if (it == ns_.end())
    throw ConfigError(std::string("no latency coefficient for (") + to_string(op) +
                      ", " + to_string(c) + ")");
  return it->second;
}

void LatencyCoeffs::set_preprocess(const std::string& modality, double seconds) {
  if (seconds < 0) throw ValidationError("preprocess seconds must be >= 0");
  preprocess_s_[modality] = seconds;
}

double LatencyCoeffs::preprocess_seconds(const std::string& modality) const {
  auto it = preprocess_s_.find(modality);
  return it == preprocess_s_.end() ? 0.0 : it->second;
}

LatencyCoeffs LatencyCoeffs::load(std::istream& in, const std::string& source) {
  CsvTable table = read_csv(in, source);
  const std::vector<std::string> expected = {"op_class", "precision_class", "ns_per_op"};
  if (table.header != expected)
    throw ParseError(source + ": bad header, expected op_class,precision_class,ns_per_op");
  LatencyCoeffs coeffs;
  for (const CsvRow& row : table.rows) {
    if (row.fields[0] == "preprocess") {
      double seconds = parse_double_field(row.fields[2], table, row, "ns_per_op");
      try {
        coeffs.set_preprocess(row.fields[1], seconds);
      } catch (const ValidationError& e) {
        throw ParseError(source + ":" + std::to_string(row.line) + ": " + e.what());
      }
      continue;
    }
    try {
      OpClass op = parse_op_class(row.fields[0]);
      CoeffClass c = parse_coeff_class(row.fields[1]);
      coeffs.set(op, c, parse_double_field(row.fields[2], table, row, "ns_per_op"));
    } catch (const ValidationError& e) {
      throw ParseError(source + ":" + std::to_string(row.line) + ": " + e.what());
    }
  }
  return coeffs;
}

LatencyCoeffs LatencyCoeffs::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open coefficients file: " + path);
  return load(in, path);
}

double model_latency(const ArchGraph& graph, const PrecisionScheme& scheme,
                     const LatencyCoeffs& coeffs) {
  CoeffClass c = coeff_class(scheme);
  double ns = 0;
  for (const LayerNode& n : graph.layers)
    ns += static_cast<double>(n.opcount) * coeffs.ns_per_op(op_class(n.kind), c);
  double seconds = ns * 1e-9;
  // Multiply the multibit factor last so latency(a,w) == a*w * latency(1,1)
  // holds bit-exactly.
  if (scheme.cls == PrecisionClass::xnor)
    seconds = seconds * (scheme.a_bits * scheme.w_bits);
  return seconds;
}

PipelineLatency system_latency(const std::vector<Branch>& branches, int cores,
                               const std::map<std::string, double>& preprocess_s,
                               bool include_preprocessing) {
  if (branches.empty()) throw ValidationError("system_latency: no branches");
  if (cores < 1) throw ValidationError("system_latency: cores must be >= 1");

  PipelineLatency out;
  out.branches.resize(branches.size());

  // Longest-processing-time list scheduling.
  std::vector<std::size_t> order(branches.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return branches[a].compute_s > branches[b].compute_s;
  });
  std::vector<double> load(static_cast<std::size_t>(cores), 0.0);
  for (std::size_t idx : order) {
    std::size_t worker = 0;
    for (std::size_t w = 1; w < load.size(); ++w)
      if (load[w] < load[worker]) worker = w;
    load[worker] += branches[idx].compute_s;
    out.branches[idx] = {branches[idx].modality, branches[idx].compute_s,
                         static_cast<int>(worker)};
  }
  out.compute_s = *std::max_element(load.begin(), load.end());

  if (include_preprocessing) {
    std::set<std::string> modalities;
    for (const Branch& b : branches) modalities.insert(b.modality);
    for (const std::string& m : modalities) {
      auto it = preprocess_s.find(m);
      if (it == preprocess_s.end()) continue;
      out.preprocess_by_modality[m] = it->second;
      out.preprocess_s += it->second;
    }
  }
  out.total_s = out.compute_s + out.preprocess_s;
  return out;
}

double effective_latency(double latency_s, double frr) {
  if (frr < 0) throw ValidationError("effective_latency: frr must be >= 0");
  if (frr >= 1)
    throw EvalError("effective_latency: frr >= 1 never authenticates (undefined expectation)");
  if (latency_s < 0) throw ValidationError("effective_latency: latency must be >= 0");
  return latency_s / (1.0 - frr);
}

}  // namespace tinydse
