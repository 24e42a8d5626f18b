// Copyright 2026 The qcrb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON input documents: probe descriptions and POVMs.
//
// Probe document, one of
//   {"family": "ghz_like",      "nu": [1, -2]}
//   {"family": "noon_like",     "nu": [1, 1]}
//   {"family": "cyclic_paired", "m": 4}
//   {"family": "custom",        "kets": [{"label": "a", "re": 0.6, "im": 0, "encoding": [1, 0]}, ...]}
//   {"family": "transverse_ising", "omega": 1, "g": 0.5, "n_sites": 4}
//   {"family": "xy_three_site",    "lambda": 1, "gamma": 0.5, "h": 1}
// with optional "labels" (parameter names), "x" and "weight" arrays.
//
// POVM document: {"elements": [M_1, M_2, ...]}, each M a list of rows and
// each entry an [re, im] pair.

#ifndef QCRB_TOOLS_DOCUMENTS_H_
#define QCRB_TOOLS_DOCUMENTS_H_

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qcrb/probes.h"
#include "qcrb/strategy.h"

namespace qcrb::cli {

struct ProbeDocument {
  ProbeSpec spec;
  std::vector<std::string> labels;
  std::optional<Vector> x;
  std::optional<Vector> weight;
};

/// Throws InputError with a field path ("probe.kets[1].encoding: ...").
ProbeDocument parse_probe_document(const nlohmann::json& doc);
Povm parse_povm_document(const nlohmann::json& doc);

/// Reads and parses a JSON file; InputError on I/O or syntax errors.
nlohmann::json read_json_file(const std::string& path);

/// "0.5,-1,2" -> vector. InputError naming `what` on malformed input.
Vector parse_decimal_list(const std::string& text, const std::string& what);

}  // namespace qcrb::cli

#endif  // QCRB_TOOLS_DOCUMENTS_H_
