// Copyright 2026 The freqdim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Experiment manifests: a JSON document naming one operation, its system,
// parameters and seed. Running a manifest twice produces identical bytes.
//
//   {"version": 1, "operation": "freqset", "seed": 7,
//    "system": {"type": "linear", "base": 2},
//    "parameters": {"m": 1, "p": "1,0", "n": 10, "eps": "0.1"},
//    "outputs": {"report": "report.json", "csv": "members.csv"}}

#ifndef FREQDIM_MANIFEST_HPP_
#define FREQDIM_MANIFEST_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "freqdim/freqset.hpp"

namespace freqdim {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResource = 3;

struct ManifestOutcome {
  int exit_code = kExitOk;
  nlohmann::json report;          // always an object
  std::optional<std::string> csv;
  std::string error;              // diagnostic for nonzero exits
};

// Names accepted in "operation".
const std::vector<std::string>& manifest_operations();

// Runs the manifest. Output paths are resolved against base_dir and
// written only when write_outputs is set.
ManifestOutcome run_manifest(const nlohmann::json& manifest,
                             const std::filesystem::path& base_dir = {},
                             bool write_outputs = false);

// The serialized report as written to disk (2-space indent, trailing
// newline).
std::string render_report(const nlohmann::json& report);

// Random subset of the admissible generation-n words: each word is kept
// with probability 1/2 (one random bit per word, in code order); an empty
// draw is replaced by a single random word.
CylinderUnion random_union(const SystemPtr& system, int n, std::mt19937_64& rng);

}  // namespace freqdim

#endif  // FREQDIM_MANIFEST_HPP_
