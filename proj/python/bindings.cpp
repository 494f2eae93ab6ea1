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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tinydse/arch.hpp"
#include "tinydse/bioeval.hpp"
#include "tinydse/catalog.hpp"
#include "tinydse/dse.hpp"
#include "tinydse/errors.hpp"
#include "tinydse/footprint.hpp"
#include "tinydse/perf.hpp"
#include "tinydse/precision.hpp"

namespace py = pybind11;
using namespace tinydse;

namespace {

ScoreSet to_scores(const std::vector<std::pair<bool, double>>& pairs) {
  ScoreSet scores;
  scores.reserve(pairs.size());
  for (auto [same, dist] : pairs) scores.push_back({same, dist});
  return scores;
}

Embedding to_embedding(std::vector<double> values) {
  Embedding e;
  e.values = std::move(values);
  return e;
}

}  // namespace

PYBIND11_MODULE(_tinydse, m) {
  m.doc() = "Design-space exploration for tiny multimodal authentication models";

  py::register_exception<ParseError>(m, "ParseError");
  py::register_exception<ValidationError>(m, "ValidationError");
  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<InfeasibleError>(m, "InfeasibleError");
  py::register_exception<EvalError>(m, "EvalError");

  py::class_<Shape>(m, "Shape")
      .def_readonly("h", &Shape::h)
      .def_readonly("w", &Shape::w)
      .def_readonly("c", &Shape::c)
      .def("elems", &Shape::elems)
      .def("__repr__", [](const Shape& s) {
        return "Shape(" + std::to_string(s.h) + ", " + std::to_string(s.w) + ", " +
               std::to_string(s.c) + ")";
      });

  py::class_<LayerNode>(m, "LayerNode")
      .def_property_readonly("kind", [](const LayerNode& n) { return std::string(to_string(n.kind)); })
      .def_readonly("name", &LayerNode::name)
      .def_readonly("in_shape", &LayerNode::in_shape)
      .def_readonly("out_shape", &LayerNode::out_shape)
      .def_readonly("param_count", &LayerNode::param_count)
      .def_readonly("opcount", &LayerNode::opcount);

  py::class_<ArchSpec>(m, "ArchSpec")
      .def(py::init([](std::string name, std::vector<int> blocks, int base_channels,
                       int input_h, int input_w, int input_c, int embedding_dim,
                       const std::string& stem) {
             ArchSpec s;
             s.name = std::move(name);
             s.stage_blocks = std::move(blocks);
             s.base_channels = base_channels;
             s.input_h = input_h;
             s.input_w = input_w;
             s.input_c = input_c;
             s.embedding_dim = embedding_dim;
             s.stem = parse_stem_variant(stem);
             s.validate();
             return s;
           }),
           py::arg("name"), py::arg("blocks"), py::arg("base_channels") = 64,
           py::arg("input_h") = 224, py::arg("input_w") = 224, py::arg("input_c") = 3,
           py::arg("embedding_dim") = 512, py::arg("stem") = "standard")
      .def_readonly("name", &ArchSpec::name)
      .def_readonly("blocks", &ArchSpec::stage_blocks)
      .def_readonly("base_channels", &ArchSpec::base_channels)
      .def_readonly("embedding_dim", &ArchSpec::embedding_dim);

  py::class_<ArchGraph>(m, "ArchGraph")
      .def_readonly("layers", &ArchGraph::layers)
      .def_property_readonly("name", [](const ArchGraph& g) { return g.spec.name; })
      .def("param_count", [](const ArchGraph& g) { return param_count(g); })
      .def("total_opcount", [](const ArchGraph& g) { return total_opcount(g); });

  m.def("build_arch", &build_arch, py::arg("spec"));
  m.def("default_archs", &default_archs);
  m.def("load_archs", &load_archs_file, py::arg("path"));
  m.def("layer_opcounts", [](const ArchGraph& g) {
    std::vector<std::pair<std::string, std::int64_t>> out;
    for (const auto& v : layer_opcounts(g)) out.emplace_back(v.name, v.value);
    return out;
  });
  m.def("layer_activation_elems", [](const ArchGraph& g) {
    std::vector<std::pair<std::string, std::int64_t>> out;
    for (const auto& v : layer_activation_elems(g)) out.emplace_back(v.name, v.value);
    return out;
  });

  py::class_<PrecisionScheme>(m, "PrecisionScheme")
      .def_static("parse", &PrecisionScheme::parse, py::arg("tag"))
      .def_static("float32", &PrecisionScheme::float32)
      .def_static("fixed8", &PrecisionScheme::fixed8)
      .def_static("xnor", &PrecisionScheme::xnor, py::arg("a_bits"), py::arg("w_bits"))
      .def_readonly("a_bits", &PrecisionScheme::a_bits)
      .def_readonly("w_bits", &PrecisionScheme::w_bits)
      .def("tag", &PrecisionScheme::tag)
      .def("__repr__", [](const PrecisionScheme& s) { return "PrecisionScheme(" + s.tag() + ")"; });
  m.def("default_schemes", &default_schemes);

  m.def("param_bytes", &param_bytes, py::arg("graph"), py::arg("scheme"));
  m.def("activation_bytes", &activation_bytes, py::arg("elems"), py::arg("scheme"),
        py::arg("is_network_input") = false);
  m.def("peak_memory_bytes", &peak_memory_bytes, py::arg("graph"), py::arg("scheme"));
  m.def("flash_required_bytes", &flash_required_bytes, py::arg("param_bytes"),
        py::arg("code_size_bytes") = kDefaultCodeSizeBytes);

  py::class_<Part>(m, "Part")
      .def_property_readonly("kind", [](const Part& p) { return std::string(to_string(p.kind)); })
      .def_readonly("name", &Part::name)
      .def_readonly("capacity_mb", &Part::capacity_mb)
      .def_readonly("cores", &Part::cores)
      .def_readonly("price_cents", &Part::price_cents);

  py::class_<PartCatalog>(m, "PartCatalog")
      .def_static("load", &PartCatalog::load_file, py::arg("path"))
      .def_property_readonly("parts", &PartCatalog::parts);
  m.def("default_catalog", &default_catalog);
  m.def("select_memory_tier",
        [](const PartCatalog& catalog, const std::string& kind, std::int64_t required) {
          return select_memory_tier(catalog, parse_part_kind(kind), required);
        },
        py::arg("catalog"), py::arg("kind"), py::arg("required_bytes"));

  py::class_<BoardConfig>(m, "BoardConfig")
      .def_readonly("processor", &BoardConfig::processor)
      .def_readonly("sensors", &BoardConfig::sensors)
      .def_readonly("psram", &BoardConfig::psram)
      .def_readonly("flash", &BoardConfig::flash);

  py::class_<CostBreakdown>(m, "CostBreakdown")
      .def_property_readonly("items",
                             [](const CostBreakdown& b) {
                               std::vector<std::pair<std::string, std::int64_t>> out;
                               for (const auto& i : b.items) out.emplace_back(i.name, i.price_cents);
                               return out;
                             })
      .def_readonly("total_cents", &CostBreakdown::total_cents);

  m.def("min_board",
        [](const PartCatalog& catalog, std::int64_t flash_bytes, std::int64_t psram_bytes,
           std::vector<std::string> sensors, int min_cores, const std::string& processor) {
          BoardRequirements req;
          req.flash_bytes = flash_bytes;
          req.psram_bytes = psram_bytes;
          req.sensors = std::move(sensors);
          req.min_cores = min_cores;
          req.processor = processor;
          return min_board(catalog, req);
        },
        py::arg("catalog"), py::arg("flash_bytes"), py::arg("psram_bytes"),
        py::arg("sensors") = std::vector<std::string>{}, py::arg("min_cores") = 1,
        py::arg("processor") = "");
  m.def("board_cost", &board_cost, py::arg("board"));

  py::class_<LatencyCoeffs>(m, "LatencyCoeffs")
      .def(py::init<>())
      .def_static("load", &LatencyCoeffs::load_file, py::arg("path"))
      .def("set",
           [](LatencyCoeffs& c, const std::string& op, const std::string& cls, double ns) {
             c.set(parse_op_class(op), parse_coeff_class(cls), ns);
           },
           py::arg("op_class"), py::arg("precision_class"), py::arg("ns_per_op"))
      .def("set_preprocess", &LatencyCoeffs::set_preprocess, py::arg("modality"),
           py::arg("seconds"))
      .def("preprocess_seconds", &LatencyCoeffs::preprocess_seconds, py::arg("modality"));

  m.def("model_latency", &model_latency, py::arg("graph"), py::arg("scheme"),
        py::arg("coeffs"));
  m.def("system_latency",
        [](const std::vector<std::pair<std::string, double>>& branches, int cores,
           const std::map<std::string, double>& preprocess_s, bool include_preprocessing) {
          std::vector<Branch> bs;
          for (const auto& [modality, seconds] : branches) bs.push_back({modality, seconds});
          PipelineLatency p = system_latency(bs, cores, preprocess_s, include_preprocessing);
          return py::make_tuple(p.compute_s, p.preprocess_s, p.total_s);
        },
        py::arg("branches"), py::arg("cores"),
        py::arg("preprocess_s") = std::map<std::string, double>{},
        py::arg("include_preprocessing") = false);
  m.def("effective_latency", &effective_latency, py::arg("latency_s"), py::arg("frr"));

  py::class_<RocPoint>(m, "RocPoint")
      .def_readonly("threshold", &RocPoint::threshold)
      .def_readonly("far", &RocPoint::far)
      .def_readonly("frr", &RocPoint::frr);
  py::class_<RocCurve>(m, "RocCurve").def_readonly("points", &RocCurve::points);
  py::class_<OperatingPoint>(m, "OperatingPoint")
      .def_readonly("threshold", &OperatingPoint::threshold)
      .def_readonly("frr", &OperatingPoint::frr);

  m.def("distance",
        [](std::vector<double> a, std::vector<double> b) {
          return distance(to_embedding(std::move(a)), to_embedding(std::move(b)));
        },
        py::arg("a"), py::arg("b"));
  m.def("fuse_distance",
        [](std::vector<double> fe, std::vector<double> fp, std::vector<double> ve,
           std::vector<double> vp) {
          return fuse_distance(to_embedding(std::move(fe)), to_embedding(std::move(fp)),
                               to_embedding(std::move(ve)), to_embedding(std::move(vp)));
        },
        py::arg("face_enroll"), py::arg("face_probe"), py::arg("voice_enroll"),
        py::arg("voice_probe"));
  m.def("roc",
        [](const std::vector<std::pair<bool, double>>& scores, std::size_t granularity) {
          return roc(to_scores(scores), granularity);
        },
        py::arg("scores"), py::arg("granularity") = 0);
  m.def("eer", [](const RocCurve& curve) { return eer(curve); }, py::arg("curve"));
  m.def("eer_of",
        [](const std::vector<std::pair<bool, double>>& scores) {
          return eer(roc(to_scores(scores)));
        },
        py::arg("scores"));
  m.def("frr_at_far", &frr_at_far, py::arg("curve"), py::arg("far_target"));
  m.def("histogram",
        [](const std::vector<std::pair<bool, double>>& scores, int bins, double lo, double hi) {
          Histogram h = histogram(to_scores(scores), bins, lo, hi);
          return py::make_tuple(h.same_counts, h.different_counts);
        },
        py::arg("scores"), py::arg("bins"), py::arg("lo"), py::arg("hi"));

  m.def("pareto_front",
        [](const std::vector<std::pair<double, double>>& points) {
          std::vector<XY> xs;
          xs.reserve(points.size());
          for (auto [x, y] : points) xs.push_back({x, y});
          return pareto_front(xs);
        },
        py::arg("points"),
        "Indices of the non-dominated points (both coordinates minimized)");
}
