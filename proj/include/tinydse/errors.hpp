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

#include <stdexcept>
#include <string>

namespace tinydse {

// Base class for all tinydse errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input file (bad header, bad field, duplicate row). Messages carry
// "<source>:<line>:" where applicable.
struct ParseError : Error {
  using Error::Error;
};

// A domain value violates its invariants (bad ArchSpec, bad bit width, ...).
struct ValidationError : Error {
  using Error::Error;
};

// Missing or inconsistent run configuration (absent coefficient, bad flag).
struct ConfigError : Error {
  using Error::Error;
};

// A requirement cannot be met by the catalog (memory tier too small,
// unknown sensor, no qualifying processor).
struct InfeasibleError : Error {
  using Error::Error;
};

// An evaluation cannot produce a result (single-class score set, metric
// missing from a design point).
struct EvalError : Error {
  using Error::Error;
};

}  // namespace tinydse
