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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tinydse/arch.hpp"
#include "tinydse/bioeval.hpp"
#include "tinydse/catalog.hpp"
#include "tinydse/dse.hpp"
#include "tinydse/errors.hpp"
#include "tinydse/footprint.hpp"
#include "tinydse/perf.hpp"
#include "tinydse/precision.hpp"
#include "tinydse/report.hpp"

namespace {

using namespace tinydse;

// Exit codes: 0 ok, 2 input/parse, 3 configuration, 4 infeasible, 1 other.
constexpr int kExitParse = 2;
constexpr int kExitConfig = 3;
constexpr int kExitInfeasible = 4;

struct Options {
  std::string catalog_path;
  std::string archs_path;
  std::string coeffs_path;
  std::string results_path;
  std::string scores_path;
  std::string embeddings_path;
  std::string arch;
  std::string scheme = "float32";
  std::string modality = "face";
  std::vector<std::string> arch_filter;
  std::vector<std::string> scheme_filter;
  std::vector<std::string> modality_filter;
  int cores = 1;
  bool cores_set = false;
  std::vector<double> far_pct = {1, 5, 10};
  double code_size_kb = 256;
  bool include_preprocessing = false;
  bool per_layer = false;
  int psram_mb = 0;
  int flash_mb = 0;
  int hist_bins = 0;
  std::optional<double> hist_min;
  std::optional<double> hist_max;
  std::string hist_out;
  std::string format = "csv";
  std::string out;
};

ReportFormat parse_format(const std::string& format) {
  if (format == "csv") return ReportFormat::csv;
  if (format == "json") return ReportFormat::json;
  throw ConfigError("unknown output format '" + format + "' (expected csv or json)");
}

void check_far_list(const std::vector<double>& far_pct) {
  if (far_pct.empty()) throw ConfigError("--far needs at least one value");
  for (double f : far_pct)
    if (!(f > 0) || !(f < 100))
      throw ConfigError("--far values must be in (0,100), got " + std::to_string(f));
}

std::int64_t code_size_bytes(const Options& opt) {
  if (opt.code_size_kb < 0) throw ConfigError("--code-size-kb must be >= 0");
  return static_cast<std::int64_t>(opt.code_size_kb * 1024.0);
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write to " + path);
  out << text;
}

PartCatalog load_catalog(const Options& opt) {
  return opt.catalog_path.empty() ? default_catalog()
                                  : PartCatalog::load_file(opt.catalog_path);
}

std::vector<ArchSpec> load_arch_specs(const Options& opt) {
  return opt.archs_path.empty() ? default_archs() : load_archs_file(opt.archs_path);
}

const ArchSpec& find_arch(const std::vector<ArchSpec>& specs, const std::string& name) {
  for (const ArchSpec& s : specs)
    if (s.name == name) return s;
  throw ConfigError("unknown architecture '" + name + "'");
}

LatencyCoeffs load_coeffs(const Options& opt) {
  if (opt.coeffs_path.empty())
    throw ConfigError("a coefficients file is required (--coeffs <path>)");
  return LatencyCoeffs::load_file(opt.coeffs_path);
}

// Fusion doubles weight storage (two branch networks share one program
// image); peak memory stays the max branch peak.
SizeReport sized_for_modality(const ArchGraph& graph, const PrecisionScheme& scheme,
                              Modality modality, std::int64_t code_bytes) {
  SizeReport report = size_report(graph, scheme, code_bytes);
  if (modality == Modality::fusion) {
    report.param_bytes *= 2;
    report.flash_required_bytes = flash_required_bytes(report.param_bytes, code_bytes);
  }
  return report;
}

int cmd_size(const Options& opt) {
  if (opt.arch.empty()) throw ConfigError("--arch is required");
  auto specs = load_arch_specs(opt);
  ArchGraph graph = build_arch(find_arch(specs, opt.arch));
  PrecisionScheme scheme = PrecisionScheme::parse(opt.scheme);
  Modality modality = parse_modality(opt.modality);
  SizeReport report = sized_for_modality(graph, scheme, modality, code_size_bytes(opt));
  Report rendered = opt.per_layer ? size_layers_report(report) : size_summary_report(report);
  write_output(render(rendered, parse_format(opt.format)), opt.out);
  return 0;
}

int cmd_cost(const Options& opt) {
  PartCatalog catalog = load_catalog(opt);
  Modality modality = parse_modality(opt.modality);

  BoardRequirements req;
  req.sensors = required_sensors(modality);
  req.min_cores = opt.cores;

  bool pinned_psram = opt.psram_mb > 0;
  bool pinned_flash = opt.flash_mb > 0;
  if (!pinned_psram || !pinned_flash) {
    if (opt.arch.empty())
      throw ConfigError("--arch is required unless both --psram-mb and --flash-mb are given");
    auto specs = load_arch_specs(opt);
    ArchGraph graph = build_arch(find_arch(specs, opt.arch));
    PrecisionScheme scheme = PrecisionScheme::parse(opt.scheme);
    SizeReport report = sized_for_modality(graph, scheme, modality, code_size_bytes(opt));
    req.flash_bytes = report.flash_required_bytes;
    req.psram_bytes = report.psram_required_bytes;
  }

  BoardConfig board = min_board(catalog, req);
  auto pin_tier = [&](PartKind kind, int capacity_mb, std::optional<Part>& slot) {
    for (const Part& p : catalog.parts())
      if (p.kind == kind && p.capacity_mb == capacity_mb) {
        slot = p;
        return;
      }
    throw InfeasibleError("no " + std::string(to_string(kind)) + " tier of " +
                          std::to_string(capacity_mb) + " MB in catalog");
  };
  if (pinned_psram) pin_tier(PartKind::psram, opt.psram_mb, board.psram);
  if (pinned_flash) pin_tier(PartKind::flash, opt.flash_mb, board.flash);

  write_output(render(cost_report(board_cost(board)), parse_format(opt.format)), opt.out);
  return 0;
}

int cmd_latency(const Options& opt) {
  if (opt.arch.empty()) throw ConfigError("--arch is required");
  auto specs = load_arch_specs(opt);
  ArchGraph graph = build_arch(find_arch(specs, opt.arch));
  PrecisionScheme scheme = PrecisionScheme::parse(opt.scheme);
  Modality modality = parse_modality(opt.modality);
  LatencyCoeffs coeffs = load_coeffs(opt);

  double branch_s = model_latency(graph, scheme, coeffs);
  std::vector<Branch> branches;
  if (modality == Modality::fusion)
    branches = {{"face", branch_s}, {"voice", branch_s}};
  else
    branches = {{to_string(modality), branch_s}};
  PipelineLatency pipeline = system_latency(branches, opt.cores, coeffs.preprocess_map(),
                                            opt.include_preprocessing);
  write_output(render(latency_report(pipeline), parse_format(opt.format)), opt.out);
  return 0;
}

int cmd_eer(const Options& opt) {
  if (opt.scores_path.empty() == opt.embeddings_path.empty())
    throw ConfigError("exactly one of --scores or --embeddings is required");
  check_far_list(opt.far_pct);
  if (opt.hist_bins > 0 && opt.hist_out.empty())
    throw ConfigError("--hist-out is required when --hist-bins is given");

  std::map<std::string, ScoreSet> sets;
  if (!opt.scores_path.empty())
    sets.emplace("scores", load_scores_file(opt.scores_path));
  else
    sets = scores_from_pairs(load_embeddings_file(opt.embeddings_path));

  std::vector<EerReportEntry> entries;
  std::map<std::string, Histogram> histograms;
  for (const auto& [modality, scores] : sets) {
    RocCurve curve = roc(scores);
    EerReportEntry entry;
    entry.modality = modality;
    entry.eer = eer(curve);
    for (double far : opt.far_pct)
      entry.at_far.emplace_back(far / 100.0, frr_at_far(curve, far / 100.0));
    entries.push_back(std::move(entry));
    if (opt.hist_bins > 0) {
      double lo = opt.hist_min.value_or(0.0);
      double hi = opt.hist_max.value_or(0.0);
      if (!opt.hist_min || !opt.hist_max) {
        auto [mn, mx] = std::minmax_element(
            scores.begin(), scores.end(),
            [](const ScorePair& a, const ScorePair& b) { return a.dist < b.dist; });
        if (!opt.hist_min) lo = mn->dist;
        if (!opt.hist_max) hi = mx->dist;
      }
      if (!(lo < hi)) hi = lo + 1.0;  // all-equal score sets
      histograms.emplace(modality, histogram(scores, opt.hist_bins, lo, hi));
    }
  }

  ReportFormat format = parse_format(opt.format);
  write_output(render(eer_report(entries), format), opt.out);
  if (opt.hist_bins > 0)
    write_output(render(histogram_report(histograms), format), opt.hist_out);
  return 0;
}

int cmd_explore(const Options& opt) {
  if (opt.out.empty()) throw ConfigError("--out <directory> is required for explore");
  check_far_list(opt.far_pct);
  ReportFormat format = parse_format(opt.format);

  PartCatalog catalog = load_catalog(opt);
  std::vector<ArchSpec> archs = load_arch_specs(opt);
  LatencyCoeffs coeffs = load_coeffs(opt);

  if (!opt.arch_filter.empty()) {
    std::vector<ArchSpec> picked;
    for (const std::string& name : opt.arch_filter) picked.push_back(find_arch(archs, name));
    archs = std::move(picked);
  }
  std::vector<PrecisionScheme> schemes;
  if (opt.scheme_filter.empty())
    schemes = default_schemes();
  else
    for (const std::string& tag : opt.scheme_filter)
      schemes.push_back(PrecisionScheme::parse(tag));
  std::vector<Modality> modalities;
  if (opt.modality_filter.empty())
    modalities = {Modality::face, Modality::voice, Modality::fusion};
  else
    for (const std::string& m : opt.modality_filter) modalities.push_back(parse_modality(m));

  std::vector<std::string> processors;
  for (const Part& p : catalog.of_kind(PartKind::processor))
    if (!opt.cores_set || p.cores == opt.cores) processors.push_back(p.name);
  if (processors.empty())
    throw ConfigError(opt.cores_set
                          ? "no catalog processor has exactly " + std::to_string(opt.cores) +
                                " core(s)"
                          : "catalog has no processors");

  std::optional<ResultsTable> results;
  if (!opt.results_path.empty()) results = ResultsTable::load_file(opt.results_path);

  EvalOptions eval_opt;
  eval_opt.code_size_bytes = code_size_bytes(opt);
  eval_opt.include_preprocessing = opt.include_preprocessing;
  eval_opt.far_pct = opt.far_pct;

  ExploreResult result = explore(archs, schemes, modalities, processors, catalog, coeffs,
                                 results ? &*results : nullptr, eval_opt);

  std::filesystem::create_directories(opt.out);
  std::string ext = format == ReportFormat::csv ? ".csv" : ".json";
  write_output(render(points_report(result.points, eval_opt), format),
               (std::filesystem::path(opt.out) / ("points" + ext)).string());
  for (const Front& front : result.fronts)
    write_output(render(front_report(result, front, eval_opt), format),
                 (std::filesystem::path(opt.out) / ("front_" + front.name + ext)).string());
  for (const std::string& warning : result.warnings)
    std::cerr << "tinydse: warning: " << warning << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tinydse - cost/latency/accuracy design-space explorer for tiny "
               "authentication models"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--catalog", opt.catalog_path, "Part catalog CSV (default: built-in)");
    cmd->add_option("--archs", opt.archs_path, "Architecture CSV (default: built-in family)");
    cmd->add_option("--code-size-kb", opt.code_size_kb, "Program image size in KB")
        ->capture_default_str();
    cmd->add_option("--format", opt.format, "Output format: csv or json")
        ->capture_default_str();
    cmd->add_option("--out", opt.out, "Output path (explore: output directory)");
  };

  CLI::App* size = app.add_subcommand("size", "Storage and memory footprint of one model");
  add_common(size);
  size->add_option("--arch", opt.arch, "Architecture name")->required();
  size->add_option("--scheme", opt.scheme, "Precision scheme tag")->capture_default_str();
  size->add_option("--modality", opt.modality, "face, voice or fusion")
      ->capture_default_str();
  size->add_flag("--per-layer", opt.per_layer, "Per-layer breakdown instead of the summary");

  CLI::App* cost = app.add_subcommand("cost", "Bill of materials for a minimal board");
  add_common(cost);
  cost->add_option("--arch", opt.arch, "Architecture name");
  cost->add_option("--scheme", opt.scheme, "Precision scheme tag")->capture_default_str();
  cost->add_option("--modality", opt.modality, "face, voice or fusion")
      ->capture_default_str();
  cost->add_option("--cores", opt.cores, "Minimum processor cores")->capture_default_str();
  cost->add_option("--psram-mb", opt.psram_mb, "Pin the PSRAM tier (MB)");
  cost->add_option("--flash-mb", opt.flash_mb, "Pin the flash tier (MB)");

  CLI::App* latency = app.add_subcommand("latency", "Estimated inference latency");
  add_common(latency);
  latency->add_option("--arch", opt.arch, "Architecture name")->required();
  latency->add_option("--scheme", opt.scheme, "Precision scheme tag")->capture_default_str();
  latency->add_option("--modality", opt.modality, "face, voice or fusion")
      ->capture_default_str();
  latency->add_option("--cores", opt.cores, "Processor cores")->capture_default_str();
  latency->add_option("--coeffs", opt.coeffs_path, "Latency coefficients CSV");
  latency->add_flag("--include-preprocessing", opt.include_preprocessing,
                    "Add per-modality preprocessing time");

  CLI::App* eer_cmd = app.add_subcommand("eer", "Verification metrics from scores or embeddings");
  add_common(eer_cmd);
  eer_cmd->add_option("--scores", opt.scores_path, "Scores CSV (label,distance)");
  eer_cmd->add_option("--embeddings", opt.embeddings_path, "Embeddings CSV");
  eer_cmd->add_option("--far", opt.far_pct, "FAR operating points in percent")
      ->delimiter(',')
      ->capture_default_str();
  eer_cmd->add_option("--hist-bins", opt.hist_bins, "Emit distance histograms with N bins");
  eer_cmd->add_option("--hist-min", opt.hist_min, "Histogram range low (default: data min)");
  eer_cmd->add_option("--hist-max", opt.hist_max, "Histogram range high (default: data max)");
  eer_cmd->add_option("--hist-out", opt.hist_out, "Histogram output path");

  CLI::App* explore_cmd = app.add_subcommand("explore", "Evaluate the design space and extract Pareto fronts");
  add_common(explore_cmd);
  explore_cmd->add_option("--coeffs", opt.coeffs_path, "Latency coefficients CSV");
  explore_cmd->add_option("--results", opt.results_path, "Measured accuracy CSV");
  explore_cmd->add_option("--arch", opt.arch_filter, "Restrict to these architectures")
      ->delimiter(',');
  explore_cmd->add_option("--scheme", opt.scheme_filter, "Restrict to these schemes")
      ->delimiter(',');
  explore_cmd->add_option("--modality", opt.modality_filter, "Restrict to these modalities")
      ->delimiter(',');
  explore_cmd->add_option("--cores", opt.cores, "Restrict to processors with this core count")
      ->each([&](const std::string&) { opt.cores_set = true; });
  explore_cmd->add_option("--far", opt.far_pct, "FAR operating points in percent")
      ->delimiter(',')
      ->capture_default_str();
  explore_cmd->add_flag("--include-preprocessing", opt.include_preprocessing,
                        "Add per-modality preprocessing time");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (app.got_subcommand(size)) return cmd_size(opt);
    if (app.got_subcommand(cost)) return cmd_cost(opt);
    if (app.got_subcommand(latency)) return cmd_latency(opt);
    if (app.got_subcommand(eer_cmd)) return cmd_eer(opt);
    if (app.got_subcommand(explore_cmd)) return cmd_explore(opt);
  } catch (const ParseError& e) {
    std::cerr << "tinydse: parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const EvalError& e) {
    std::cerr << "tinydse: error: " << e.what() << "\n";
    return kExitParse;
  } catch (const InfeasibleError& e) {
    std::cerr << "tinydse: infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const ConfigError& e) {
    std::cerr << "tinydse: configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ValidationError& e) {
    std::cerr << "tinydse: configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "tinydse: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
