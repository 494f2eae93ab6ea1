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

#include "tinydse/arch.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "tinydse/csv.hpp"
#include "tinydse/errors.hpp"

namespace tinydse {

const char* to_string(LayerKind kind) {
  switch (kind) {
    case LayerKind::conv: return "conv";
    case LayerKind::batchnorm: return "batchnorm";
    case LayerKind::relu: return "relu";
    case LayerKind::maxpool: return "maxpool";
    case LayerKind::avgpool: return "avgpool";
    case LayerKind::fc: return "fc";
    case LayerKind::residual_add: return "residual_add";
  }
  return "?";
}

const char* to_string(StemVariant stem) {
  return stem == StemVariant::standard ? "standard" : "modified";
}

StemVariant parse_stem_variant(const std::string& text) {
  if (text == "standard") return StemVariant::standard;
  if (text == "modified") return StemVariant::modified;
  throw ValidationError("unknown stem variant: '" + text + "'");
}

void ArchSpec::validate() const {
  if (name.empty()) throw ValidationError("arch spec: name is empty");
  if (stage_blocks.empty())
    throw ValidationError("arch spec '" + name + "': stage_blocks is empty");
  for (int b : stage_blocks)
    if (b < 1)
      throw ValidationError("arch spec '" + name + "': stage_blocks entry " +
                            std::to_string(b) + " is below 1");
  if (base_channels < 1)
    throw ValidationError("arch spec '" + name + "': base_channels must be >= 1");
  if (input_h < 1 || input_w < 1 || input_c < 1)
    throw ValidationError("arch spec '" + name + "': input_shape dims must be >= 1");
  if (embedding_dim < 1)
    throw ValidationError("arch spec '" + name + "': embedding_dim must be >= 1");
}

namespace {

int conv_out_dim(int in, int kernel, int stride, const std::string& arch) {
  int pad = kernel / 2;
  int out = (in + 2 * pad - kernel) / stride + 1;
  if (out < 1)
    throw ValidationError("arch spec '" + arch + "': input too small for a " +
                          std::to_string(kernel) + "x" + std::to_string(kernel) +
                          " stride-" + std::to_string(stride) + " conv");
  return out;
}

int pool_out_dim(int in, int kernel, const std::string& arch) {
  int out = (in - kernel) / kernel + 1;
  if (out < 1)
    throw ValidationError("arch spec '" + arch + "': input too small for a " +
                          std::to_string(kernel) + "x" + std::to_string(kernel) + " pool");
  return out;
}

struct GraphBuilder {
  const std::string& arch;
  std::vector<LayerNode> layers;

  Shape conv(const std::string& name, Shape in, int out_c, int kernel, int stride) {
    LayerNode n;
    n.kind = LayerKind::conv;
    n.name = name;
    n.in_shape = in;
    n.kernel_h = n.kernel_w = kernel;
    n.stride = stride;
    n.out_shape = Shape{conv_out_dim(in.h, kernel, stride, arch),
                        conv_out_dim(in.w, kernel, stride, arch), out_c};
    n.param_count = std::int64_t{kernel} * kernel * in.c * out_c;
    n.opcount = n.out_shape.elems() / out_c * kernel * kernel * in.c * out_c;
    layers.push_back(std::move(n));
    return layers.back().out_shape;
  }

  Shape batchnorm(const std::string& name, Shape in) {
    LayerNode n;
    n.kind = LayerKind::batchnorm;
    n.name = name;
    n.in_shape = n.out_shape = in;
    n.param_count = 2 * std::int64_t{in.c};  // affine scale and shift
    n.opcount = in.elems();
    layers.push_back(std::move(n));
    return in;
  }

  Shape relu(const std::string& name, Shape in) {
    LayerNode n;
    n.kind = LayerKind::relu;
    n.name = name;
    n.in_shape = n.out_shape = in;
    n.opcount = in.elems();
    layers.push_back(std::move(n));
    return in;
  }

  Shape maxpool(const std::string& name, Shape in, int kernel) {
    LayerNode n;
    n.kind = LayerKind::maxpool;
    n.name = name;
    n.in_shape = in;
    n.kernel_h = n.kernel_w = kernel;
    n.stride = kernel;
    n.out_shape =
        Shape{pool_out_dim(in.h, kernel, arch), pool_out_dim(in.w, kernel, arch), in.c};
    n.opcount = std::int64_t{kernel} * kernel * n.out_shape.elems();
    layers.push_back(std::move(n));
    return layers.back().out_shape;
  }

  Shape global_avgpool(const std::string& name, Shape in) {
    LayerNode n;
    n.kind = LayerKind::avgpool;
    n.name = name;
    n.in_shape = in;
    n.kernel_h = in.h;
    n.kernel_w = in.w;
    n.stride = 1;
    n.out_shape = Shape{1, 1, in.c};
    n.opcount = std::int64_t{in.h} * in.w * n.out_shape.elems();
    layers.push_back(std::move(n));
    return layers.back().out_shape;
  }

  Shape fc(const std::string& name, Shape in, int out_dim) {
    LayerNode n;
    n.kind = LayerKind::fc;
    n.name = name;
    n.in_shape = in;
    n.out_shape = Shape{1, 1, out_dim};
    n.has_bias = true;
    n.param_count = in.elems() * out_dim + out_dim;
    n.opcount = in.elems() * out_dim;
    layers.push_back(std::move(n));
    return layers.back().out_shape;
  }

  Shape residual_add(const std::string& name, Shape in) {
    LayerNode n;
    n.kind = LayerKind::residual_add;
    n.name = name;
    n.in_shape = n.out_shape = in;
    n.opcount = in.elems();
    layers.push_back(std::move(n));
    return in;
  }
};

}  // namespace

ArchGraph build_arch(const ArchSpec& spec) {
  spec.validate();
  ArchGraph graph;
  graph.spec = spec;
  GraphBuilder b{spec.name, {}};

  Shape cur{spec.input_h, spec.input_w, spec.input_c};
  if (spec.stem == StemVariant::standard) {
    cur = b.conv("stem_conv", cur, spec.base_channels, 7, 2);
    cur = b.batchnorm("stem_bn", cur);
    cur = b.relu("stem_relu", cur);
    cur = b.maxpool("stem_pool", cur, 2);
  } else {
    // Stride-1 stem conv with the pool moved directly behind it, kernel 4.
    cur = b.conv("stem_conv", cur, spec.base_channels, 7, 1);
    cur = b.maxpool("stem_pool", cur, 4);
    cur = b.batchnorm("stem_bn", cur);
    cur = b.relu("stem_relu", cur);
  }

  int in_c = spec.base_channels;
  for (std::size_t si = 0; si < spec.stage_blocks.size(); ++si) {
    int out_c = spec.base_channels << si;
    for (int bi = 0; bi < spec.stage_blocks[si]; ++bi) {
      int stride = (bi == 0 && si > 0) ? 2 : 1;
      bool downsample = stride != 1 || in_c != out_c;
      std::string p = "s" + std::to_string(si + 1) + "b" + std::to_string(bi + 1) + "_";
      std::size_t block_input = b.layers.size() - 1;
      Shape block_in = cur;

      cur = b.conv(p + "conv1", cur, out_c, 3, stride);
      cur = b.batchnorm(p + "bn1", cur);
      cur = b.relu(p + "relu1", cur);
      cur = b.conv(p + "conv2", cur, out_c, 3, 1);
      cur = b.batchnorm(p + "bn2", cur);

      std::size_t shortcut_src = block_input;
      if (downsample) {
        b.conv(p + "down_conv", block_in, out_c, 1, stride);
        b.batchnorm(p + "down_bn", b.layers.back().out_shape);
        shortcut_src = b.layers.size() - 1;
      }
      std::size_t add_idx = b.layers.size();
      cur = b.residual_add(p + "add", cur);
      graph.residual_edges.emplace_back(shortcut_src, add_idx);
      cur = b.relu(p + "relu2", cur);
      in_c = out_c;
    }
  }

  cur = b.global_avgpool("avgpool", cur);
  b.fc("fc", cur, spec.embedding_dim);

  graph.layers = std::move(b.layers);
  return graph;
}

void validate_graph(const ArchGraph& graph) {
  if (graph.layers.empty()) throw ValidationError("graph has no layers");
  for (std::size_t i = 0; i < graph.layers.size(); ++i) {
    const LayerNode& n = graph.layers[i];
    auto fail = [&](const std::string& what) {
      throw ValidationError("layer " + std::to_string(i) + " (" + n.name + "): " + what);
    };
    Shape in = n.in_shape;
    switch (n.kind) {
      case LayerKind::conv: {
        Shape want{conv_out_dim(in.h, n.kernel_h, n.stride, graph.spec.name),
                   conv_out_dim(in.w, n.kernel_w, n.stride, graph.spec.name),
                   n.out_shape.c};
        if (!(n.out_shape == want)) fail("conv out_shape inconsistent with geometry");
        std::int64_t params =
            std::int64_t{n.kernel_h} * n.kernel_w * in.c * n.out_shape.c +
            (n.has_bias ? n.out_shape.c : 0);
        if (n.param_count != params) fail("conv param_count inconsistent");
        break;
      }
      case LayerKind::batchnorm:
        if (!(n.out_shape == in)) fail("batchnorm must preserve shape");
        if (n.param_count != 2 * std::int64_t{in.c}) fail("batchnorm param_count != 2c");
        break;
      case LayerKind::relu:
      case LayerKind::residual_add:
        if (!(n.out_shape == in)) fail("elementwise layer must preserve shape");
        if (n.param_count != 0) fail("elementwise layer has parameters");
        break;
      case LayerKind::maxpool:
        if (n.stride != n.kernel_h) fail("pool stride must equal kernel");
        if (n.out_shape.c != in.c) fail("pool must preserve channels");
        if (n.param_count != 0) fail("pool has parameters");
        break;
      case LayerKind::avgpool:
        if (!(n.out_shape == Shape{1, 1, in.c})) fail("global avgpool out_shape != 1x1xC");
        if (n.param_count != 0) fail("pool has parameters");
        break;
      case LayerKind::fc:
        if (n.param_count != in.elems() * n.out_shape.c + (n.has_bias ? n.out_shape.c : 0))
          fail("fc param_count inconsistent");
        break;
    }
  }
  std::set<std::size_t> adds_seen;
  for (auto [src, add] : graph.residual_edges) {
    if (add >= graph.layers.size() || src >= add)
      throw ValidationError("residual edge (" + std::to_string(src) + "," +
                            std::to_string(add) + ") is not topologically ordered");
    const LayerNode& add_node = graph.layers[add];
    if (add_node.kind != LayerKind::residual_add)
      throw ValidationError("residual edge target " + add_node.name + " is not an add");
    if (!adds_seen.insert(add).second)
      throw ValidationError("residual_add " + add_node.name + " has more than one edge");
    // The two predecessors: the main path (in_shape) and the shortcut source.
    if (!(graph.layers[src].out_shape == add_node.out_shape) ||
        !(add_node.in_shape == add_node.out_shape))
      throw ValidationError("residual_add " + add_node.name +
                            " predecessors have mismatched shapes");
  }
  for (std::size_t i = 0; i < graph.layers.size(); ++i)
    if (graph.layers[i].kind == LayerKind::residual_add && !adds_seen.count(i))
      throw ValidationError("residual_add " + graph.layers[i].name + " has no shortcut edge");
}

std::int64_t param_count(const ArchGraph& graph) {
  std::int64_t total = 0;
  for (const LayerNode& n : graph.layers) total += n.param_count;
  return total;
}

std::int64_t total_opcount(const ArchGraph& graph) {
  std::int64_t total = 0;
  for (const LayerNode& n : graph.layers) total += n.opcount;
  return total;
}

std::vector<LayerValue> layer_opcounts(const ArchGraph& graph) {
  std::vector<LayerValue> out;
  out.reserve(graph.layers.size());
  for (const LayerNode& n : graph.layers) out.push_back({n.name, n.opcount});
  return out;
}

std::vector<LayerValue> layer_activation_elems(const ArchGraph& graph) {
  std::vector<LayerValue> out;
  out.reserve(graph.layers.size() + 1);
  Shape input{graph.spec.input_h, graph.spec.input_w, graph.spec.input_c};
  out.push_back({"input", input.elems()});
  for (const LayerNode& n : graph.layers) out.push_back({n.name, n.out_shape.elems()});
  return out;
}

std::string encode_blocks(const std::vector<int>& blocks) {
  std::string out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i) out.push_back('-');
    out += std::to_string(blocks[i]);
  }
  return out;
}

namespace {

std::vector<int> parse_blocks(const std::string& text, const std::string& source,
                              std::size_t line) {
  std::vector<int> blocks;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, '-')) {
    try {
      std::size_t pos = 0;
      int v = std::stoi(item, &pos);
      if (pos != item.size() || v < 1) throw std::invalid_argument(item);
      blocks.push_back(v);
    } catch (const std::exception&) {
      throw ParseError(source + ":" + std::to_string(line) +
                       ": bad blocks entry '" + item + "' in '" + text + "'");
    }
  }
  return blocks;
}

}  // namespace

std::vector<ArchSpec> load_archs(std::istream& in, const std::string& source) {
  CsvTable table = read_csv(in, source);
  const std::vector<std::string> expected = {"name",    "blocks",  "base_channels",
                                             "input_h", "input_w", "input_c",
                                             "embedding_dim", "stem"};
  if (table.header != expected)
    throw ParseError(source + ": bad header, expected name,blocks,base_channels,"
                              "input_h,input_w,input_c,embedding_dim,stem");
  std::vector<ArchSpec> specs;
  std::set<std::string> names;
  for (const CsvRow& row : table.rows) {
    ArchSpec s;
    s.name = row.fields[0];
    s.stage_blocks = parse_blocks(row.fields[1], source, row.line);
    s.base_channels = static_cast<int>(parse_int64_field(row.fields[2], table, row, "base_channels"));
    s.input_h = static_cast<int>(parse_int64_field(row.fields[3], table, row, "input_h"));
    s.input_w = static_cast<int>(parse_int64_field(row.fields[4], table, row, "input_w"));
    s.input_c = static_cast<int>(parse_int64_field(row.fields[5], table, row, "input_c"));
    s.embedding_dim =
        static_cast<int>(parse_int64_field(row.fields[6], table, row, "embedding_dim"));
    try {
      s.stem = parse_stem_variant(row.fields[7]);
      s.validate();
    } catch (const ValidationError& e) {
      throw ParseError(source + ":" + std::to_string(row.line) + ": " + e.what());
    }
    if (!names.insert(s.name).second)
      throw ParseError(source + ":" + std::to_string(row.line) +
                       ": duplicate architecture name '" + s.name + "'");
    specs.push_back(std::move(s));
  }
  if (specs.empty()) throw ParseError(source + ": no architectures defined");
  return specs;
}

std::vector<ArchSpec> load_archs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  return load_archs(in, path);
}

std::vector<ArchSpec> default_archs() {
  auto make = [](std::string name, std::vector<int> blocks) {
    ArchSpec s;
    s.name = std::move(name);
    s.stage_blocks = std::move(blocks);
    return s;
  };
  return {make("resnet6", {1, 1}),       make("resnet8a", {2, 1}),
          make("resnet8b", {1, 2}),      make("resnet10", {2, 2}),
          make("resnet14", {2, 2, 2}),   make("resnet18", {2, 2, 2, 2})};
}

}  // namespace tinydse
