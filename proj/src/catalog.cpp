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

#include "tinydse/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>

#include "tinydse/csv.hpp"
#include "tinydse/errors.hpp"

namespace tinydse {

const char* to_string(PartKind kind) {
  switch (kind) {
    case PartKind::sensor: return "sensor";
    case PartKind::processor: return "processor";
    case PartKind::psram: return "psram";
    case PartKind::flash: return "flash";
  }
  return "?";
}

PartKind parse_part_kind(const std::string& text) {
  if (text == "sensor") return PartKind::sensor;
  if (text == "processor") return PartKind::processor;
  if (text == "psram") return PartKind::psram;
  if (text == "flash") return PartKind::flash;
  throw ValidationError("unknown part kind: '" + text + "'");
}

namespace {

bool is_memory(PartKind kind) { return kind == PartKind::psram || kind == PartKind::flash; }

bool power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

void validate_parts(const std::vector<Part>& parts) {
  if (parts.empty()) throw ParseError("empty catalog");
  std::set<std::pair<int, std::string>> seen;
  for (const Part& p : parts) {
    if (p.name.empty()) throw ValidationError("catalog part with empty name");
    if (!seen.insert({static_cast<int>(p.kind), p.name}).second)
      throw ParseError("duplicate catalog part (" + std::string(to_string(p.kind)) +
                       ", " + p.name + ")");
    if (p.price_cents < 0)
      throw ValidationError("part '" + p.name + "': negative price");
    if (is_memory(p.kind)) {
      if (!power_of_two(p.capacity_mb))
        throw ValidationError("part '" + p.name + "': capacity " +
                              std::to_string(p.capacity_mb) + " MB is not a power of two");
    } else if (p.capacity_mb != 0) {
      throw ValidationError("part '" + p.name + "': capacity only applies to memories");
    }
    if (p.kind == PartKind::processor) {
      if (p.cores < 1)
        throw ValidationError("part '" + p.name + "': processor needs cores >= 1");
    } else if (p.cores != 0) {
      throw ValidationError("part '" + p.name + "': cores only apply to processors");
    }
  }
  // Tier prices must strictly increase with capacity within a memory kind.
  for (PartKind kind : {PartKind::psram, PartKind::flash}) {
    std::map<int, const Part*> tiers;
    for (const Part& p : parts) {
      if (p.kind != kind) continue;
      if (!tiers.emplace(p.capacity_mb, &p).second)
        throw ValidationError("duplicate " + std::string(to_string(kind)) + " tier " +
                              std::to_string(p.capacity_mb) + " MB");
    }
    const Part* prev = nullptr;
    for (auto& [cap, part] : tiers) {
      if (prev && part->price_cents <= prev->price_cents)
        throw ValidationError(std::string(to_string(kind)) + " tier prices must " +
                              "strictly increase with capacity ('" + part->name +
                              "' is not above '" + prev->name + "')");
      prev = part;
    }
  }
}

}  // namespace

PartCatalog PartCatalog::from_parts(std::vector<Part> parts) {
  validate_parts(parts);
  PartCatalog catalog;
  catalog.parts_ = std::move(parts);
  return catalog;
}

PartCatalog PartCatalog::load(std::istream& in, const std::string& source) {
  CsvTable table = read_csv(in, source);
  const std::vector<std::string> expected = {"kind", "name", "capacity_mb", "cores",
                                             "price_usd"};
  if (table.header != expected)
    throw ParseError(source + ": bad header, expected kind,name,capacity_mb,cores,price_usd");
  std::vector<Part> parts;
  for (const CsvRow& row : table.rows) {
    Part p;
    try {
      p.kind = parse_part_kind(row.fields[0]);
    } catch (const ValidationError& e) {
      throw ParseError(source + ":" + std::to_string(row.line) + ": " + e.what());
    }
    p.name = row.fields[1];
    if (!row.fields[2].empty())
      p.capacity_mb = static_cast<int>(parse_int64_field(row.fields[2], table, row, "capacity_mb"));
    if (!row.fields[3].empty())
      p.cores = static_cast<int>(parse_int64_field(row.fields[3], table, row, "cores"));
    p.price_cents = parse_price_cents(row.fields[4], table, row, "price_usd");
    parts.push_back(std::move(p));
  }
  try {
    return from_parts(std::move(parts));
  } catch (const ValidationError& e) {
    throw ValidationError(source + ": " + e.what());
  }
}

PartCatalog PartCatalog::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  return load(in, path);
}

const Part* PartCatalog::find(PartKind kind, std::string_view name) const {
  for (const Part& p : parts_)
    if (p.kind == kind && p.name == name) return &p;
  return nullptr;
}

std::vector<Part> PartCatalog::of_kind(PartKind kind) const {
  std::vector<Part> out;
  for (const Part& p : parts_)
    if (p.kind == kind) out.push_back(p);
  return out;
}

PartCatalog default_catalog() {
  auto part = [](PartKind kind, std::string name, int capacity_mb, int cores,
                 std::int64_t cents) {
    return Part{kind, std::move(name), capacity_mb, cores, cents};
  };
  return PartCatalog::from_parts({
      part(PartKind::sensor, "camera", 0, 0, 760),
      part(PartKind::sensor, "microphone", 0, 0, 156),
      part(PartKind::processor, "esp32c3", 0, 1, 110),
      part(PartKind::processor, "esp32s3", 0, 2, 352),
      part(PartKind::psram, "psram_1mb", 1, 0, 207),
      part(PartKind::psram, "psram_2mb", 2, 0, 248),
      part(PartKind::psram, "psram_4mb", 4, 0, 281),
      part(PartKind::psram, "psram_8mb", 8, 0, 330),
      part(PartKind::psram, "psram_16mb", 16, 0, 388),
      part(PartKind::flash, "flash_1mb", 1, 0, 44),
      part(PartKind::flash, "flash_2mb", 2, 0, 57),
      part(PartKind::flash, "flash_4mb", 4, 0, 73),
      part(PartKind::flash, "flash_8mb", 8, 0, 92),
      part(PartKind::flash, "flash_16mb", 16, 0, 144),
  });
}

Part select_memory_tier(const PartCatalog& catalog, PartKind kind,
                        std::int64_t required_bytes) {
  if (kind != PartKind::psram && kind != PartKind::flash)
    throw ValidationError("select_memory_tier: kind must be psram or flash");
  if (required_bytes < 0)
    throw ValidationError("select_memory_tier: required bytes must be >= 0");
  const Part* best = nullptr;
  std::int64_t largest = 0;
  for (const Part& p : catalog.parts()) {
    if (p.kind != kind) continue;
    largest = std::max(largest, p.capacity_bytes());
    if (p.capacity_bytes() < required_bytes) continue;
    if (!best || p.price_cents < best->price_cents ||
        (p.price_cents == best->price_cents && p.capacity_mb < best->capacity_mb))
      best = &p;
  }
  if (!best)
    throw InfeasibleError(std::string(to_string(kind)) + " requirement of " +
                          std::to_string(required_bytes) + " B exceeds the largest tier (" +
                          std::to_string(largest) + " B) by " +
                          std::to_string(required_bytes - largest) + " B");
  return *best;
}

BoardConfig min_board(const PartCatalog& catalog, const BoardRequirements& req) {
  BoardConfig board;
  if (!req.processor.empty()) {
    const Part* p = catalog.find(PartKind::processor, req.processor);
    if (!p) throw InfeasibleError("processor '" + req.processor + "' not in catalog");
    board.processor = *p;
  } else {
    const Part* best = nullptr;
    for (const Part& p : catalog.parts()) {
      if (p.kind != PartKind::processor || p.cores < req.min_cores) continue;
      if (!best || p.price_cents < best->price_cents ||
          (p.price_cents == best->price_cents && p.cores < best->cores))
        best = &p;
    }
    if (!best)
      throw InfeasibleError("no processor with at least " +
                            std::to_string(req.min_cores) + " cores in catalog");
    board.processor = *best;
  }

  std::set<std::string> wanted(req.sensors.begin(), req.sensors.end());
  for (const std::string& name : wanted) {
    const Part* s = catalog.find(PartKind::sensor, name);
    if (!s) throw InfeasibleError("sensor '" + name + "' not in catalog");
    board.sensors.push_back(*s);
  }

  board.psram = select_memory_tier(catalog, PartKind::psram, req.psram_bytes);
  board.flash = select_memory_tier(catalog, PartKind::flash, req.flash_bytes);
  return board;
}

CostBreakdown board_cost(const BoardConfig& board) {
  CostBreakdown breakdown;
  auto add = [&](const Part& p) {
    breakdown.items.push_back({p.name, p.price_cents});
    breakdown.total_cents += p.price_cents;
  };
  add(board.processor);
  for (const Part& s : board.sensors) add(s);
  if (board.psram) add(*board.psram);
  if (board.flash) add(*board.flash);
  return breakdown;
}

}  // namespace tinydse
