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

// Small accessors that turn JSON shape errors into InputError messages
// prefixed with the JSON pointer of the offending value.

#ifndef FREQDIM_JSON_UTIL_HPP_
#define FREQDIM_JSON_UTIL_HPP_

#include <string>

#include <nlohmann/json.hpp>

#include "freqdim/errors.hpp"
#include "freqdim/number.hpp"

namespace freqdim {

inline const nlohmann::json& json_member(const nlohmann::json& obj, const std::string& key,
                                         const std::string& pointer) {
  if (!obj.is_object()) throw InputError(pointer + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(pointer + "/" + key + ": missing required field");
  return *it;
}

inline std::string json_string(const nlohmann::json& obj, const std::string& key,
                               const std::string& pointer) {
  const auto& v = json_member(obj, key, pointer);
  if (!v.is_string()) throw InputError(pointer + "/" + key + ": expected a string");
  return v.get<std::string>();
}

inline int json_int(const nlohmann::json& obj, const std::string& key, const std::string& pointer) {
  const auto& v = json_member(obj, key, pointer);
  if (!v.is_number_integer()) throw InputError(pointer + "/" + key + ": expected an integer");
  return v.get<int>();
}

// Numbers are read from their JSON text so that 0.1 means exactly 1/10.
inline Rational json_rational(const nlohmann::json& v, const std::string& pointer) {
  try {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number()) return parse_rational(v.dump());
  } catch (const InputError& e) {
    throw InputError(pointer + ": " + e.what());
  }
  throw InputError(pointer + ": expected a number or a rational string");
}

inline Rational json_rational(const nlohmann::json& obj, const std::string& key,
                              const std::string& pointer) {
  return json_rational(json_member(obj, key, pointer), pointer + "/" + key);
}

}  // namespace freqdim

#endif  // FREQDIM_JSON_UTIL_HPP_
