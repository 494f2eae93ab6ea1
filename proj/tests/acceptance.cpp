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

// End-to-end acceptance suite: one pass/fail line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "test_util.hpp"
#include "tinydse/arch.hpp"
#include "tinydse/bioeval.hpp"
#include "tinydse/catalog.hpp"
#include "tinydse/dse.hpp"
#include "tinydse/footprint.hpp"
#include "tinydse/perf.hpp"
#include "tinydse/report.hpp"

using namespace tinydse;
using namespace tinydse::testutil;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int criterion, const std::string& name, bool ok, const std::string& detail) {
  std::printf("%s  %2d  %-28s %s\n", ok ? "PASS" : "FAIL", criterion, name.c_str(),
              detail.c_str());
  if (!ok) ++failures;
}

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

ArchSpec spec_for(std::vector<int> blocks, int base) {
  ArchSpec s;
  s.name = "acc_" + encode_blocks(blocks) + "_" + std::to_string(base);
  s.stage_blocks = std::move(blocks);
  s.base_channels = base;
  s.input_h = s.input_w = 224;
  s.input_c = 3;
  s.embedding_dim = 512;
  return s;
}

LatencyCoeffs random_coeffs(std::mt19937& rng) {
  std::uniform_real_distribution<double> c(0.5, 300.0);
  LatencyCoeffs coeffs;
  for (OpClass op : {OpClass::conv, OpClass::fc, OpClass::elementwise, OpClass::pool})
    for (CoeffClass cls : {CoeffClass::float32, CoeffClass::fixed8, CoeffClass::xnor_base})
      coeffs.set(op, cls, c(rng));
  return coeffs;
}

// --- criterion 1: reference parameter sizes -----------------------------------

void criterion_1() {
  auto start = Clock::now();
  const std::pair<std::vector<int>, double> reference[] = {
      {{1, 1}, 1.453},     {{2, 1}, 1.736},     {{1, 2}, 2.583},
      {{2, 2}, 2.860},     {{2, 2, 2}, 11.124}, {{2, 2, 2, 2}, 43.564}};
  double worst = 0;
  bool ok = true;
  for (const auto& [blocks, mb_ref] : reference) {
    ArchGraph g = build_arch(spec_for(blocks, 64));
    double mb = static_cast<double>(param_count(g)) * 4.0 / (1 << 20);
    double rel = std::abs(mb - mb_ref) / mb_ref;
    worst = std::max(worst, rel);
    if (rel >= 0.01) ok = false;
  }
  double elapsed = ms_since(start);
  ok = ok && elapsed < 1000.0;
  std::ostringstream detail;
  detail << "max rel err " << worst * 100 << "% over 6 models, " << elapsed << " ms";
  report(1, "reference-param-sizes", ok, detail.str());
}

// --- criterion 2: memory anchors ---------------------------------------------

void criterion_2() {
  bool ok = true;
  for (const PrecisionScheme& s :
       {PrecisionScheme::float32(), PrecisionScheme::fixed8(), PrecisionScheme::xnor(3, 1),
        PrecisionScheme::xnor(2, 1), PrecisionScheme::xnor(2, 2)})
    ok = ok && activation_bytes(224 * 224 * 3, s, true) == 602112;
  ok = ok && activation_bytes(112 * 112 * 32, PrecisionScheme::float32(), false) == 1605632;

  ArchGraph g = build_arch(spec_for({2, 2}, 32));
  ok = ok && peak_memory_bytes(g, PrecisionScheme::float32()) == 1605632;
  ok = ok && peak_memory_bytes(g, PrecisionScheme::fixed8()) == 602112;
  for (auto [a, w] : {std::pair{3, 1}, {2, 1}, {2, 2}})
    ok = ok && peak_memory_bytes(g, PrecisionScheme::xnor(a, w)) == 602112;
  report(2, "memory-anchors", ok, "602112 B input / 1605632 B first-conv, exact");
}

// --- criterion 3: flash sizing -----------------------------------------------

void criterion_3() {
  std::int64_t required = flash_required_bytes(3 * (1 << 20), (1 << 20) / 4);
  Part tier = select_memory_tier(default_catalog(), PartKind::flash, required);
  bool ok = required == 3407872 && tier.capacity_mb == 4;
  report(3, "flash-tier-rounding", ok, "3.25 MB requirement -> 4 MB tier");
}

// --- criterion 4: BOM arithmetic ---------------------------------------------

void criterion_4() {
  PartCatalog cat = default_catalog();
  bool ok = true;
  std::int64_t delta = cat.find(PartKind::flash, "flash_16mb")->price_cents -
                       cat.find(PartKind::flash, "flash_1mb")->price_cents;
  ok = ok && delta == 100;

  std::int64_t camera = cat.find(PartKind::sensor, "camera")->price_cents;
  std::int64_t memories = cat.find(PartKind::flash, "flash_8mb")->price_cents +
                          cat.find(PartKind::psram, "psram_16mb")->price_cents;
  ok = ok && camera == 760 && memories == 480 && camera > memories;

  BoardConfig eye;
  eye.processor = *cat.find(PartKind::processor, "esp32s3");
  eye.sensors = {*cat.find(PartKind::sensor, "camera"),
                 *cat.find(PartKind::sensor, "microphone")};
  eye.psram = *cat.find(PartKind::psram, "psram_8mb");
  eye.flash = *cat.find(PartKind::flash, "flash_4mb");
  std::int64_t total = board_cost(eye).total_cents;
  ok = ok && total == 1671 && total < 1990;
  report(4, "bom-arithmetic", ok,
         "flash delta $1.00, camera $7.60 > $4.80, fusion board $16.71");
}

// --- criterion 5: latency laws -----------------------------------------------

void criterion_5() {
  std::mt19937 rng(55001);
  bool ok = true;
  for (int i = 0; i < 100 && ok; ++i) {
    ArchGraph g = build_arch(random_spec(rng, i));
    LatencyCoeffs coeffs = random_coeffs(rng);
    double base = model_latency(g, PrecisionScheme::xnor(1, 1), coeffs);
    for (int a : {1, 2, 3})
      for (int w : {1, 2})
        ok = ok && model_latency(g, PrecisionScheme::xnor(a, w), coeffs) == a * w * base;

    std::map<std::string, double> no_prep;
    double t = model_latency(g, PrecisionScheme::fixed8(), coeffs);
    double dual = system_latency({{"face", t}, {"voice", t}}, 2, no_prep, false).compute_s;
    double single = system_latency({{"face", t}, {"voice", t}}, 1, no_prep, false).compute_s;
    ok = ok && dual == t && single == 2 * t && dual == single / 2;
  }
  report(5, "latency-laws", ok,
         "xnor a*w scaling and dual-core halving, exact on 100 random models");
}

// --- criterion 6: EER engine vs exhaustive sweep oracle -----------------------

// Independent oracle: enumerate candidate thresholds from scratch, count
// FAR/FRR by direct passes over the scores, and interpolate the crossing.
double oracle_eer(const ScoreSet& scores) {
  std::vector<double> uniq;
  for (const ScorePair& p : scores) uniq.push_back(p.dist);
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  std::vector<double> sweep;
  sweep.push_back(uniq.front());
  for (std::size_t i = 0; i + 1 < uniq.size(); ++i)
    sweep.push_back(0.5 * (uniq[i] + uniq[i + 1]));
  sweep.push_back(uniq.back() + 1.0);

  double prev_far = oracle_far(scores, sweep[0]);
  double prev_frr = oracle_frr(scores, sweep[0]);
  if (prev_far >= prev_frr) return 0.5 * (prev_far + prev_frr);
  for (std::size_t i = 1; i < sweep.size(); ++i) {
    double far = oracle_far(scores, sweep[i]);
    double frr = oracle_frr(scores, sweep[i]);
    if (far >= frr) {
      double denom = (far - prev_far) - (frr - prev_frr);
      double alpha = (prev_frr - prev_far) / denom;
      return prev_far + alpha * (far - prev_far);
    }
    prev_far = far;
    prev_frr = frr;
  }
  return 0.5 * (prev_far + prev_frr);
}

void criterion_6() {
  auto start = Clock::now();
  std::mt19937 rng(66001);
  std::uniform_int_distribution<int> n(1, 100);
  std::uniform_real_distribution<double> d(0.0, 2.0);
  bool ok = true;
  for (int trial = 0; trial < 1000 && ok; ++trial) {
    ScoreSet scores;
    int n_same = n(rng), n_diff = n(rng);  // total <= 200
    for (int i = 0; i < n_same; ++i) scores.push_back({true, d(rng)});
    for (int i = 0; i < n_diff; ++i) scores.push_back({false, d(rng)});
    RocCurve curve = roc(scores);
    for (const RocPoint& p : curve.points) {
      ok = ok && p.far == oracle_far(scores, p.threshold);
      ok = ok && p.frr == oracle_frr(scores, p.threshold);
    }
    ok = ok && std::abs(eer(curve) - oracle_eer(scores)) <= 1e-9;
  }

  ok = ok && eer(roc(make_scores({0.1, 0.2}, {0.8, 0.9}))) == 0.0;

  ScoreSet shuffled;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) shuffled.push_back({(rng() & 1) == 0, u(rng)});
  double random_eer = eer(roc(shuffled));
  ok = ok && std::abs(random_eer - 0.5) <= 0.05;

  double elapsed = ms_since(start);
  ok = ok && elapsed < 30000.0;
  std::ostringstream detail;
  detail << "1000 sweeps exact, shuffled EER " << random_eer * 100 << "%, " << elapsed
         << " ms";
  report(6, "eer-vs-sweep-oracle", ok, detail.str());
}

// --- criterion 7: fusion identity ---------------------------------------------

void criterion_7() {
  std::mt19937 rng(77001);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto random_emb = [&](std::size_t dim) {
    Embedding e;
    e.values.resize(dim);
    for (double& v : e.values) v = gauss(rng);
    return e.normalized();
  };
  bool ok = true;
  double worst = 0;
  for (int i = 0; i < 10000 && ok; ++i) {
    Embedding fe = random_emb(128), fp = random_emb(128);
    Embedding ve = random_emb(128), vp = random_emb(128);
    double fused = fuse_distance(fe, fp, ve, vp);
    double df = distance(fe, fp), dv = distance(ve, vp);
    double expect = df * df + dv * dv;
    double rel = expect == 0 ? std::abs(fused * fused)
                             : std::abs(fused * fused - expect) / expect;
    worst = std::max(worst, rel);
    ok = ok && rel <= 1e-9;
  }
  std::ostringstream detail;
  detail << "fused^2 = df^2 + dv^2, worst rel err " << worst << " over 10000 pairs";
  report(7, "fusion-identity", ok, detail.str());
}

// --- criterion 8: effective latency vs Monte-Carlo ----------------------------

void criterion_8() {
  std::mt19937 rng(88001);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double latency = 7.5;
  bool ok = true;
  std::ostringstream detail;
  for (double frr : {0.0, 0.1, 0.5, 0.9}) {
    double total = 0;
    const int trials = 1000000;
    for (int i = 0; i < trials; ++i) {
      int attempts = 1;
      while (u(rng) < frr) ++attempts;
      total += attempts * latency;
    }
    double simulated = total / trials;
    double analytic = effective_latency(latency, frr);
    double rel = std::abs(simulated - analytic) / analytic;
    detail << "frr " << frr << ": " << rel * 100 << "% ";
    ok = ok && rel < 0.01;
  }
  report(8, "effective-latency-mc", ok, detail.str());
}

// --- criterion 9: Pareto correctness and exploration speed --------------------

void criterion_9() {
  std::mt19937 rng(99001);
  std::uniform_real_distribution<double> coord(0.0, 1000.0);
  std::uniform_int_distribution<int> small(1, 200), large(1000, 2000), pick_large(0, 9);
  bool ok = true;
  for (int trial = 0; trial < 1000 && ok; ++trial) {
    int size = pick_large(rng) == 0 ? large(rng) : small(rng);
    std::vector<XY> pts(static_cast<std::size_t>(size));
    for (XY& p : pts) p = {coord(rng), coord(rng)};
    auto fast = pareto_front(pts);
    std::vector<char> in_front(pts.size(), 0);
    for (std::size_t i : fast) in_front[i] = 1;
    for (std::size_t i = 0; i < pts.size() && ok; ++i) {
      bool dominated = false;
      for (std::size_t j = 0; j < pts.size() && !dominated; ++j)
        if (j != i && pts[j].x <= pts[i].x && pts[j].y <= pts[i].y &&
            (pts[j].x < pts[i].x || pts[j].y < pts[i].y))
          dominated = true;
      ok = ok && in_front[i] == (dominated ? 0 : 1);
    }
  }

  // 180-point default exploration, including report emission, under 5 s
  auto start = Clock::now();
  ResultsTable results =
      ResultsTable::load_file(std::string(TINYDSE_DATA_DIR) + "/results_synthetic.csv");
  LatencyCoeffs coeffs =
      LatencyCoeffs::load_file(std::string(TINYDSE_DATA_DIR) + "/coeffs_default.csv");
  EvalOptions options;
  ExploreResult explored = explore(
      default_archs(), default_schemes(),
      {Modality::face, Modality::voice, Modality::fusion}, {"esp32c3", "esp32s3"},
      default_catalog(), coeffs, &results, options);
  auto out_dir = std::filesystem::temp_directory_path() / "tinydse_acceptance_fronts";
  std::filesystem::create_directories(out_dir);
  {
    std::ofstream points(out_dir / "points.csv");
    points << to_csv(points_report(explored.points, options));
    for (const Front& front : explored.fronts) {
      std::ofstream f(out_dir / ("front_" + front.name + ".csv"));
      f << to_csv(front_report(explored, front, options));
    }
  }
  double elapsed = ms_since(start);
  std::error_code ec;
  std::filesystem::remove_all(out_dir, ec);
  ok = ok && explored.points.size() == 180 && explored.fronts.size() == 6 &&
       elapsed < 5000.0;
  std::ostringstream detail;
  detail << "1000 sets vs O(n^2) oracle; 180-point exploration in " << elapsed << " ms";
  report(9, "pareto-correctness", ok, detail.str());
}

// --- criterion 10: synthetic results ingestion --------------------------------

void criterion_10() {
  bool ok = true;
  std::string why;
  try {
    ResultsTable results =
        ResultsTable::load_file(std::string(TINYDSE_DATA_DIR) + "/results_synthetic.csv");
    LatencyCoeffs coeffs =
        LatencyCoeffs::load_file(std::string(TINYDSE_DATA_DIR) + "/coeffs_default.csv");
    ExploreResult explored = explore(
        default_archs(), default_schemes(),
        {Modality::face, Modality::voice, Modality::fusion}, {"esp32c3", "esp32s3"},
        default_catalog(), coeffs, &results, {});

    // EER never increases along a front as the cost-like axis grows.
    for (const Front& front : explored.fronts) {
      if (front.y_metric != MetricId::eer_pct) continue;
      double prev = 101.0;
      for (std::size_t idx : front.point_indices) {
        double eer_pct = *metric_value(explored.points[idx], MetricId::eer_pct);
        if (eer_pct > prev) ok = false;
        prev = eer_pct;
      }
    }

    // voice-only boards are the cheapest modality everywhere they compare
    const DesignPoint* cheapest = nullptr;
    for (const DesignPoint& p : explored.points) {
      if (!p.feasible) continue;
      if (!cheapest || p.metrics.cost_cents < cheapest->metrics.cost_cents) cheapest = &p;
    }
    ok = ok && cheapest && cheapest->modality == Modality::voice;
    std::map<std::string, std::map<Modality, std::int64_t>> by_config;
    for (const DesignPoint& p : explored.points)
      if (p.feasible)
        by_config[p.arch + "|" + p.scheme.tag() + "|" + p.processor][p.modality] =
            p.metrics.cost_cents;
    for (const auto& [config, costs] : by_config) {
      if (costs.count(Modality::voice) && costs.count(Modality::face))
        ok = ok && costs.at(Modality::voice) < costs.at(Modality::face);
      if (costs.count(Modality::face) && costs.count(Modality::fusion))
        ok = ok && costs.at(Modality::face) < costs.at(Modality::fusion);
    }

    // fusion points carry both sensors
    for (const DesignPoint& p : explored.points) {
      if (!p.feasible || p.modality != Modality::fusion) continue;
      std::set<std::string> names;
      for (const Part& s : p.board.sensors) names.insert(s.name);
      ok = ok && names == std::set<std::string>{"camera", "microphone"};
    }
    why = "synthetic results round-trip; fronts keep the qualitative shape";
  } catch (const std::exception& e) {
    ok = false;
    why = e.what();
  }
  report(10, "results-ingestion", ok, why);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  if (failures) std::printf("%d criterion(s) FAILED\n", failures);
  else std::printf("all 10 criteria passed\n");
  return failures == 0 ? 0 : 1;
}
