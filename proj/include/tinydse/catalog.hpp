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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tinydse {

enum class PartKind { sensor, processor, psram, flash };
const char* to_string(PartKind kind);
PartKind parse_part_kind(const std::string& text);

struct Part {
  PartKind kind = PartKind::sensor;
  std::string name;
  int capacity_mb = 0;        // memories only; power of two
  int cores = 0;              // processors only
  std::int64_t price_cents = 0;

  std::int64_t capacity_bytes() const { return std::int64_t{capacity_mb} << 20; }
  bool operator==(const Part&) const = default;
};

// Priced part list. Load-time validation: no duplicate (kind,name), memory
// capacities are powers of two and unique per kind, and memory prices
// strictly increase with capacity within a kind.
class PartCatalog {
 public:
  // CSV header: kind,name,capacity_mb,cores,price_usd. Inapplicable columns
  // stay empty, e.g. "flash,winbond_4mb,4,,0.73" / "processor,esp32s3,,2,3.52".
  static PartCatalog load(std::istream& in, const std::string& source);
  static PartCatalog load_file(const std::string& path);
  // Constructs from rows and runs the same validation as load().
  static PartCatalog from_parts(std::vector<Part> parts);

  const std::vector<Part>& parts() const { return parts_; }
  const Part* find(PartKind kind, std::string_view name) const;
  std::vector<Part> of_kind(PartKind kind) const;

 private:
  std::vector<Part> parts_;
};

// Reference price list: camera, microphone, the two ESP32 chips, PSRAM
// 1-16 MB and flash 1-16 MB (the 16 MB flash tier completes the $1.00
// 1 MB -> 16 MB upgrade delta).
PartCatalog default_catalog();

// Cheapest part of the kind with capacity_bytes >= required (for a valid
// catalog, the smallest sufficient tier). Throws InfeasibleError naming the
// shortfall when the largest tier is too small.
Part select_memory_tier(const PartCatalog& catalog, PartKind kind,
                        std::int64_t required_bytes);

struct BoardRequirements {
  std::int64_t flash_bytes = 0;
  std::int64_t psram_bytes = 0;
  std::vector<std::string> sensors;
  int min_cores = 1;
  // When set, pins the processor to this exact catalog part instead of
  // taking the cheapest one with cores >= min_cores.
  std::string processor;
};

struct BoardConfig {
  Part processor;
  std::vector<Part> sensors;  // sorted by name, unique
  std::optional<Part> psram;
  std::optional<Part> flash;
};

// Cheapest board satisfying the requirements: cheapest qualifying processor,
// exactly the requested sensors, minimal memory tiers.
BoardConfig min_board(const PartCatalog& catalog, const BoardRequirements& req);

struct CostItem {
  std::string name;
  std::int64_t price_cents = 0;
};

struct CostBreakdown {
  std::vector<CostItem> items;
  std::int64_t total_cents = 0;
};

CostBreakdown board_cost(const BoardConfig& board);

}  // namespace tinydse
