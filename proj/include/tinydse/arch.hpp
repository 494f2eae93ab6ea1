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
#include <string>
#include <utility>
#include <vector>

namespace tinydse {

enum class LayerKind { conv, batchnorm, relu, maxpool, avgpool, fc, residual_add };
const char* to_string(LayerKind kind);

// Stem layout of the residual network. "standard" is a stride-2 7x7 conv
// followed by bn/relu and a 2x2 max pool; "modified" keeps the conv at
// stride 1, moves a 4x4 max pool directly behind it, and runs bn/relu after
// the pool.
enum class StemVariant { standard, modified };
const char* to_string(StemVariant stem);
StemVariant parse_stem_variant(const std::string& text);

struct Shape {
  int h = 1;
  int w = 1;
  int c = 1;
  std::int64_t elems() const { return std::int64_t{1} * h * w * c; }
  bool operator==(const Shape&) const = default;
};

struct LayerNode {
  LayerKind kind = LayerKind::conv;
  std::string name;
  Shape in_shape;
  Shape out_shape;
  int kernel_h = 0;
  int kernel_w = 0;
  int stride = 0;
  bool has_bias = false;
  std::int64_t param_count = 0;
  // Multiply-accumulates for conv/fc; element operations otherwise.
  std::int64_t opcount = 0;
};

// Declarative block-list architecture. stage_blocks[i] is the number of basic
// blocks in stage i+1; stage channels double per stage starting from
// base_channels.
struct ArchSpec {
  std::string name;
  std::vector<int> stage_blocks;
  int base_channels = 64;
  int input_h = 224;
  int input_w = 224;
  int input_c = 3;
  int embedding_dim = 512;
  StemVariant stem = StemVariant::standard;

  // Throws ValidationError naming the offending field.
  void validate() const;
};

// Elaborated layer graph. layers is topologically ordered; residual_edges
// holds (shortcut source index, residual_add index) pairs. Each layer carries
// its own in_shape, so a layer's input is not necessarily the previous
// layer's output (downsample convs read the block input).
struct ArchGraph {
  ArchSpec spec;
  std::vector<LayerNode> layers;
  std::vector<std::pair<std::size_t, std::size_t>> residual_edges;
};

// Elaborates a spec into a layer graph with per-layer geometry, parameter
// counts and opcounts. Convolutions use kernel//2 padding, pools use
// stride == kernel; convs carry no bias (a batchnorm follows every conv),
// the final fc does. The graph ends at the embedding, without a classifier.
ArchGraph build_arch(const ArchSpec& spec);

// Structural consistency checks (shape propagation, residual predecessors,
// parameter totals). Throws ValidationError on the first violation.
void validate_graph(const ArchGraph& graph);

std::int64_t param_count(const ArchGraph& graph);
std::int64_t total_opcount(const ArchGraph& graph);

struct LayerValue {
  std::string name;
  std::int64_t value = 0;
};

std::vector<LayerValue> layer_opcounts(const ArchGraph& graph);
// Output element counts per layer; entry 0 is the network input pseudo-layer.
std::vector<LayerValue> layer_activation_elems(const ArchGraph& graph);

// Architecture file: header
//   name,blocks,base_channels,input_h,input_w,input_c,embedding_dim,stem
// with blocks as dash-separated integers, e.g. "resnet10,2-2,64,224,224,3,512,standard".
std::vector<ArchSpec> load_archs(std::istream& in, const std::string& source);
std::vector<ArchSpec> load_archs_file(const std::string& path);

std::string encode_blocks(const std::vector<int>& blocks);

// Built-in six-member family (resnet6 .. resnet18), base 64, 224x224x3 input,
// 512-d embedding, standard stem.
std::vector<ArchSpec> default_archs();

}  // namespace tinydse
