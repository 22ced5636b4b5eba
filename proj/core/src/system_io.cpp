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

#include <string>

#include "freqdim/errors.hpp"
#include "freqdim/json_util.hpp"
#include "freqdim/system.hpp"

namespace freqdim {
namespace {

template <typename Fn>
SystemPtr at_pointer(const std::string& pointer, Fn&& build) {
  try {
    return build();
  } catch (const InputError& e) {
    if (std::string(e.what()).rfind(pointer, 0) == 0) throw;
    throw InputError(pointer + ": " + e.what());
  }
}

}  // namespace

SystemPtr system_from_json(const nlohmann::json& spec, const std::string& pointer) {
  if (!spec.is_object()) throw InputError(pointer + ": system must be a JSON object");
  const std::string type = json_string(spec, "type", pointer);
  if (type == "linear") {
    if (spec.contains("base")) {
      const int g = json_int(spec, "base", pointer);
      return at_pointer(pointer + "/base", [&] { return ExpansionSystem::base(g); });
    }
    const auto& branches = json_member(spec, "branches", pointer);
    if (!branches.is_array()) throw InputError(pointer + "/branches: expected an array");
    std::vector<Rational> lengths;
    for (std::size_t i = 0; i < branches.size(); ++i) {
      lengths.push_back(json_rational(branches[i], pointer + "/branches/" + std::to_string(i)));
    }
    return at_pointer(pointer + "/branches", [&] { return ExpansionSystem::linear(std::move(lengths)); });
  }
  if (type == "beta") {
    const int max_k = spec.contains("max_k") ? json_int(spec, "max_k", pointer) : 64;
    if (spec.contains("value")) {
      const auto& v = spec["value"];
      std::string text = v.is_string() ? v.get<std::string>() : v.dump();
      const int bits = spec.contains("precision_bits") ? json_int(spec, "precision_bits", pointer) : 128;
      if (bits < 8) throw InputError(pointer + "/precision_bits: must be >= 8");
      return at_pointer(pointer + "/value",
                        [&] { return ExpansionSystem::beta_from_value(text, static_cast<unsigned>(bits), max_k); });
    }
    const auto& poly = json_member(spec, "polynomial", pointer);
    const auto& iso = json_member(spec, "isolating", pointer);
    if (!poly.is_array() || poly.size() < 2) {
      throw InputError(pointer + "/polynomial: expected an array of >= 2 coefficients");
    }
    if (!iso.is_array() || iso.size() != 2) {
      throw InputError(pointer + "/isolating: expected [lo, hi]");
    }
    std::vector<Rational> coeffs;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      coeffs.push_back(json_rational(poly[i], pointer + "/polynomial/" + std::to_string(i)));
    }
    const Rational lo = json_rational(iso[0], pointer + "/isolating/0");
    const Rational hi = json_rational(iso[1], pointer + "/isolating/1");
    return at_pointer(pointer, [&] {
      return ExpansionSystem::beta(NumberField::algebraic(std::move(coeffs), lo, hi), max_k);
    });
  }
  if (type == "golden") return ExpansionSystem::golden();
  if (type == "tribonacci") return ExpansionSystem::tribonacci();
  throw InputError(pointer + "/type: unknown system type '" + type + "'");
}

}  // namespace freqdim
