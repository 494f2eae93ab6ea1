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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "test_util.hpp"
#include "tinydse/catalog.hpp"
#include "tinydse/errors.hpp"

using namespace tinydse;
using namespace tinydse::testutil;

namespace {

// The reference price list without the 16 MB flash tier: 2 sensors,
// 2 processors, 5 PSRAM tiers, 4 flash tiers.
const char* kReferencePricesCsv =
    "kind,name,capacity_mb,cores,price_usd\n"
    "sensor,camera,,,7.60\n"
    "sensor,microphone,,,1.56\n"
    "processor,esp32c3,,1,1.10\n"
    "processor,esp32s3,,2,3.52\n"
    "psram,psram_1mb,1,,2.07\n"
    "psram,psram_2mb,2,,2.48\n"
    "psram,psram_4mb,4,,2.81\n"
    "psram,psram_8mb,8,,3.30\n"
    "psram,psram_16mb,16,,3.88\n"
    "flash,flash_1mb,1,,0.44\n"
    "flash,flash_2mb,2,,0.57\n"
    "flash,flash_4mb,4,,0.73\n"
    "flash,flash_8mb,8,,0.92\n";

PartCatalog reference_prices() {
  std::stringstream in(kReferencePricesCsv);
  return PartCatalog::load(in, "reference");
}

constexpr std::int64_t MB = 1 << 20;

}  // namespace

TEST_CASE("catalog loading and the default catalog") {
  PartCatalog t3 = reference_prices();
  CHECK(t3.parts().size() == 13);
  CHECK(t3.find(PartKind::sensor, "camera")->price_cents == 760);
  CHECK(t3.find(PartKind::processor, "esp32s3")->cores == 2);
  CHECK(t3.of_kind(PartKind::psram).size() == 5);

  PartCatalog def = default_catalog();
  CHECK(def.parts().size() == 14);  // reference list plus the 16 MB flash tier
  CHECK(def.find(PartKind::flash, "flash_16mb")->price_cents == 144);
}

TEST_CASE("catalog load failures") {
  std::stringstream empty("");
  CHECK_THROWS_AS(PartCatalog::load(empty, "t"), ParseError);

  std::stringstream header_only("kind,name,capacity_mb,cores,price_usd\n");
  CHECK(caught_message<ParseError>([&] { PartCatalog::load(header_only, "t"); })
            .find("empty catalog") != std::string::npos);

  std::stringstream bad_capacity(
      "kind,name,capacity_mb,cores,price_usd\n"
      "psram,odd,3,,2.00\n");
  CHECK(caught_message<ValidationError>([&] { PartCatalog::load(bad_capacity, "t"); })
            .find("power of two") != std::string::npos);

  std::stringstream dup(
      "kind,name,capacity_mb,cores,price_usd\n"
      "sensor,camera,,,7.60\n"
      "sensor,camera,,,7.70\n");
  CHECK_THROWS_AS(PartCatalog::load(dup, "t"), ParseError);

  std::stringstream nonmonotone(
      "kind,name,capacity_mb,cores,price_usd\n"
      "flash,flash_1mb,1,,0.50\n"
      "flash,flash_2mb,2,,0.40\n");
  CHECK(caught_message<ValidationError>([&] { PartCatalog::load(nonmonotone, "t"); })
            .find("strictly increase") != std::string::npos);

  std::stringstream bad_price(
      "kind,name,capacity_mb,cores,price_usd\n"
      "sensor,mic,,,1.567\n");
  CHECK(caught_message<ParseError>([&] { PartCatalog::load(bad_price, "t"); }).find(":2") !=
        std::string::npos);
}

TEST_CASE("memory tiers round up to the smallest sufficient power of two") {
  PartCatalog t3 = reference_prices();
  CHECK(select_memory_tier(t3, PartKind::flash, 3 * MB + MB / 4).capacity_mb == 4);
  CHECK(select_memory_tier(t3, PartKind::flash, 1).capacity_mb == 1);
  CHECK(select_memory_tier(t3, PartKind::flash, 0).capacity_mb == 1);
  CHECK(select_memory_tier(t3, PartKind::psram, 602112).capacity_mb == 1);
  CHECK(select_memory_tier(t3, PartKind::psram, 1605632).capacity_mb == 2);

  std::string msg =
      caught_message<InfeasibleError>([&] { select_memory_tier(t3, PartKind::flash, 12 * MB); });
  CHECK(msg.find("exceeds") != std::string::npos);
  CHECK(msg.find("flash") != std::string::npos);
}

TEST_CASE("tier selection tightness: below 2x the requirement or the smallest tier") {
  PartCatalog def = default_catalog();
  std::mt19937 rng(301);
  std::uniform_int_distribution<std::int64_t> req(0, 16 * MB);
  for (int i = 0; i < 300; ++i) {
    std::int64_t r = req(rng);
    for (PartKind kind : {PartKind::psram, PartKind::flash}) {
      Part tier = select_memory_tier(def, kind, r);
      CHECK((tier.capacity_bytes() < 2 * r || tier.capacity_mb == 1));
      CHECK(tier.capacity_bytes() >= r);
    }
  }
}

TEST_CASE("min_board composes the cheapest satisfying configuration") {
  PartCatalog t3 = reference_prices();
  BoardRequirements req;
  req.flash_bytes = 3 * MB + MB / 4;
  req.psram_bytes = 602112;
  req.sensors = {"camera", "microphone"};
  req.min_cores = 2;
  BoardConfig board = min_board(t3, req);
  CHECK(board.processor.name == "esp32s3");
  CHECK(board.sensors.size() == 2);
  CHECK(board.psram->capacity_mb == 1);
  CHECK(board.flash->capacity_mb == 4);

  BoardRequirements tiny{1, 1, {}, 1, ""};
  BoardConfig minimal = min_board(t3, tiny);
  CHECK(minimal.processor.name == "esp32c3");
  CHECK(minimal.sensors.empty());
  CHECK(minimal.psram->capacity_mb == 1);
  CHECK(minimal.flash->capacity_mb == 1);

  BoardRequirements lidar{1, 1, {"lidar"}, 1, ""};
  CHECK(caught_message<InfeasibleError>([&] { min_board(t3, lidar); }).find("lidar") !=
        std::string::npos);

  BoardRequirements cores{1, 1, {}, 3, ""};
  CHECK_THROWS_AS(min_board(t3, cores), InfeasibleError);

  BoardRequirements pinned{1, 1, {}, 1, "esp32s3"};
  CHECK(min_board(t3, pinned).processor.name == "esp32s3");
}

TEST_CASE("board costs sum exactly in cents") {
  PartCatalog t3 = reference_prices();
  BoardConfig eye;
  eye.processor = *t3.find(PartKind::processor, "esp32s3");
  eye.sensors = {*t3.find(PartKind::sensor, "camera"),
                 *t3.find(PartKind::sensor, "microphone")};
  eye.psram = *t3.find(PartKind::psram, "psram_8mb");
  eye.flash = *t3.find(PartKind::flash, "flash_4mb");
  CostBreakdown cost = board_cost(eye);
  CHECK(cost.total_cents == 1671);  // $16.71, under the $19.9 retail unit
  CHECK(cost.items.size() == 5);

  BoardConfig cheap;
  cheap.processor = *t3.find(PartKind::processor, "esp32c3");
  cheap.sensors = {*t3.find(PartKind::sensor, "microphone")};
  cheap.psram = *t3.find(PartKind::psram, "psram_1mb");
  cheap.flash = *t3.find(PartKind::flash, "flash_1mb");
  CHECK(board_cost(cheap).total_cents == 517);  // $5.17

  BoardConfig processor_only;
  processor_only.processor = *t3.find(PartKind::processor, "esp32c3");
  CHECK(board_cost(processor_only).total_cents == 110);
}

TEST_CASE("board cost is monotone in requirements") {
  PartCatalog def = default_catalog();
  std::mt19937 rng(303);
  std::uniform_int_distribution<std::int64_t> bytes(0, 8 * MB);
  for (int i = 0; i < 100; ++i) {
    BoardRequirements a;
    a.flash_bytes = bytes(rng);
    a.psram_bytes = bytes(rng);
    a.min_cores = 1;
    BoardRequirements b = a;
    b.flash_bytes += bytes(rng) / 2;
    b.psram_bytes += bytes(rng) / 2;
    if (i % 2) b.min_cores = 2;
    if (i % 3 == 0) b.sensors = {"microphone"};
    std::int64_t cost_a = board_cost(min_board(def, a)).total_cents;
    std::int64_t cost_b = board_cost(min_board(def, b)).total_cents;
    CHECK(cost_a <= cost_b);

    BoardRequirements with_sensor = a;
    with_sensor.sensors.push_back("camera");
    CHECK(board_cost(min_board(def, with_sensor)).total_cents >= cost_a);
  }
}

TEST_CASE("published price deltas hold in the default catalog") {
  PartCatalog def = default_catalog();
  // Upgrading flash from 1 MB to 16 MB costs exactly one dollar.
  CHECK(def.find(PartKind::flash, "flash_16mb")->price_cents -
            def.find(PartKind::flash, "flash_1mb")->price_cents ==
        100);
  // A camera costs more than maxing out flash (8 MB) plus PSRAM (16 MB).
  CHECK(def.find(PartKind::sensor, "camera")->price_cents >
        def.find(PartKind::flash, "flash_8mb")->price_cents +
            def.find(PartKind::psram, "psram_16mb")->price_cents);
}
