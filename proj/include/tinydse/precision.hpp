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

#include <string>
#include <vector>

namespace tinydse {

enum class PrecisionClass { float32, fixed8, xnor };

// Uniform quantization scheme for a whole model. xnor allows 1-3 bit
// activations and 1-2 bit weights; float32/fixed8 pin both widths.
struct PrecisionScheme {
  PrecisionClass cls = PrecisionClass::float32;
  int a_bits = 32;
  int w_bits = 32;

  static PrecisionScheme float32();
  static PrecisionScheme fixed8();
  static PrecisionScheme xnor(int a_bits, int w_bits);  // throws ValidationError

  // Tags: "float32", "fixed8", "xnor_A_W" (e.g. "xnor_2_1").
  static PrecisionScheme parse(const std::string& tag);
  std::string tag() const;

  bool operator==(const PrecisionScheme&) const = default;
};

// float32, fixed8, xnor 3/1, xnor 2/1, xnor 2/2.
std::vector<PrecisionScheme> default_schemes();

}  // namespace tinydse
