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

#include "tinydse/precision.hpp"

#include "tinydse/errors.hpp"

namespace tinydse {

PrecisionScheme PrecisionScheme::float32() {
  return PrecisionScheme{PrecisionClass::float32, 32, 32};
}

PrecisionScheme PrecisionScheme::fixed8() {
  return PrecisionScheme{PrecisionClass::fixed8, 8, 8};
}

PrecisionScheme PrecisionScheme::xnor(int a_bits, int w_bits) {
  if (a_bits < 1 || a_bits > 3)
    throw ValidationError("xnor a_bits must be in {1,2,3}, got " + std::to_string(a_bits));
  if (w_bits < 1 || w_bits > 2)
    throw ValidationError("xnor w_bits must be in {1,2}, got " + std::to_string(w_bits));
  return PrecisionScheme{PrecisionClass::xnor, a_bits, w_bits};
}

PrecisionScheme PrecisionScheme::parse(const std::string& tag) {
  if (tag == "float32") return float32();
  if (tag == "fixed8") return fixed8();
  if (tag.rfind("xnor_", 0) == 0) {
    std::string rest = tag.substr(5);
    std::size_t sep = rest.find('_');
    if (sep != std::string::npos && sep > 0 && sep + 1 < rest.size()) {
      try {
        int a = std::stoi(rest.substr(0, sep));
        int w = std::stoi(rest.substr(sep + 1));
        return xnor(a, w);
      } catch (const ValidationError&) {
        throw;
      } catch (const std::exception&) {
        // fall through to the generic error
      }
    }
  }
  throw ValidationError("unknown precision scheme tag: '" + tag +
                        "' (expected float32, fixed8 or xnor_A_W)");
}

std::string PrecisionScheme::tag() const {
  switch (cls) {
    case PrecisionClass::float32: return "float32";
    case PrecisionClass::fixed8: return "fixed8";
    case PrecisionClass::xnor:
      return "xnor_" + std::to_string(a_bits) + "_" + std::to_string(w_bits);
  }
  return "?";
}

std::vector<PrecisionScheme> default_schemes() {
  return {PrecisionScheme::float32(), PrecisionScheme::fixed8(),
          PrecisionScheme::xnor(3, 1), PrecisionScheme::xnor(2, 1),
          PrecisionScheme::xnor(2, 2)};
}

}  // namespace tinydse
