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

#include "tinydse/footprint.hpp"

#include <algorithm>

#include "tinydse/errors.hpp"

namespace tinydse {

namespace {

// Word-aligned packed size of one layer's weights, in bytes.
std::int64_t packed_layer_bytes(std::int64_t params, int w_bits) {
  std::int64_t bits = params * w_bits;
  std::int64_t words = (bits + 31) / 32;
  return words * 4;
}

}  // namespace

std::int64_t param_bytes(const ArchGraph& graph, const PrecisionScheme& scheme) {
  switch (scheme.cls) {
    case PrecisionClass::float32: return param_count(graph) * 4;
    case PrecisionClass::fixed8: return param_count(graph);
    case PrecisionClass::xnor: {
      std::int64_t total = 0;
      for (const LayerNode& n : graph.layers)
        total += packed_layer_bytes(n.param_count, scheme.w_bits);
      return total;
    }
  }
  return 0;
}

std::int64_t activation_bytes(std::int64_t elems, const PrecisionScheme& scheme,
                              bool is_network_input) {
  if (elems < 0) throw ValidationError("activation_bytes: negative element count");
  if (is_network_input) return elems * 4;  // inputs stay floating point
  switch (scheme.cls) {
    case PrecisionClass::float32: return elems * 4;
    case PrecisionClass::fixed8: return elems;
    case PrecisionClass::xnor: return (elems * scheme.a_bits + 7) / 8;
  }
  return 0;
}

std::int64_t peak_memory_bytes(const ArchGraph& graph, const PrecisionScheme& scheme) {
  auto elems = layer_activation_elems(graph);
  std::int64_t peak = 0;
  for (std::size_t i = 0; i < elems.size(); ++i)
    peak = std::max(peak, activation_bytes(elems[i].value, scheme, i == 0));
  return peak;
}

std::int64_t flash_required_bytes(std::int64_t param_bytes, std::int64_t code_size_bytes) {
  if (param_bytes < 0 || code_size_bytes < 0)
    throw ValidationError("flash_required_bytes: sizes must be >= 0");
  return param_bytes + code_size_bytes;
}

SizeReport size_report(const ArchGraph& graph, const PrecisionScheme& scheme,
                       std::int64_t code_size_bytes) {
  SizeReport report;
  auto elems = layer_activation_elems(graph);
  report.per_layer.reserve(elems.size());
  report.per_layer.push_back(
      {"input", 0, activation_bytes(elems[0].value, scheme, true)});
  for (std::size_t i = 0; i < graph.layers.size(); ++i) {
    const LayerNode& n = graph.layers[i];
    std::int64_t pbytes = 0;
    switch (scheme.cls) {
      case PrecisionClass::float32: pbytes = n.param_count * 4; break;
      case PrecisionClass::fixed8: pbytes = n.param_count; break;
      case PrecisionClass::xnor: pbytes = packed_layer_bytes(n.param_count, scheme.w_bits); break;
    }
    report.per_layer.push_back(
        {n.name, pbytes, activation_bytes(n.out_shape.elems(), scheme, false)});
  }
  for (const LayerSize& l : report.per_layer) {
    report.param_bytes += l.param_bytes;
    report.peak_activation_bytes = std::max(report.peak_activation_bytes, l.activation_bytes);
  }
  report.psram_required_bytes = report.peak_activation_bytes;
  report.flash_required_bytes = flash_required_bytes(report.param_bytes, code_size_bytes);
  return report;
}

}  // namespace tinydse
