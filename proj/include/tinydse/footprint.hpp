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
#include <string>
#include <vector>

#include "tinydse/arch.hpp"
#include "tinydse/precision.hpp"

namespace tinydse {

inline constexpr std::int64_t kDefaultCodeSizeBytes = 262144;  // 0.25 MB program image

// Weight storage for the whole graph. float32: 4 B/param, fixed8: 1 B/param,
// xnor: w_bits * params bits per layer, each layer padded up to a 32-bit
// word boundary (packed-bitmap layout).
std::int64_t param_bytes(const ArchGraph& graph, const PrecisionScheme& scheme);

// Bytes of one activation tensor. The network input is always billed at
// 4 B/element regardless of scheme; interior tensors follow the scheme
// (xnor: a_bits per element, rounded up to whole bytes).
std::int64_t activation_bytes(std::int64_t elems, const PrecisionScheme& scheme,
                              bool is_network_input);

// Largest single live activation buffer: max over the input pseudo-layer and
// every layer output. No tiling, no double-buffering.
std::int64_t peak_memory_bytes(const ArchGraph& graph, const PrecisionScheme& scheme);

// Weights plus program image, before any power-of-two tier rounding.
std::int64_t flash_required_bytes(std::int64_t param_bytes, std::int64_t code_size_bytes);

struct LayerSize {
  std::string name;
  std::int64_t param_bytes = 0;
  std::int64_t activation_bytes = 0;
};

struct SizeReport {
  std::int64_t param_bytes = 0;
  std::int64_t peak_activation_bytes = 0;
  std::int64_t flash_required_bytes = 0;
  std::int64_t psram_required_bytes = 0;
  std::vector<LayerSize> per_layer;  // entry 0 is the input pseudo-layer
};

SizeReport size_report(const ArchGraph& graph, const PrecisionScheme& scheme,
                       std::int64_t code_size_bytes = kDefaultCodeSizeBytes);

}  // namespace tinydse
