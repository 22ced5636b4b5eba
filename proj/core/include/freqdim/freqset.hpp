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


// Frequency sets G(n, eps): the union of generation-n cylinders whose
// length-m word frequencies lie strictly within eps of a target vector,
// materialized as sorted word codes.

#ifndef FREQDIM_FREQSET_HPP_
#define FREQDIM_FREQSET_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "freqdim/system.hpp"
#include "freqdim/word.hpp"

namespace freqdim {

struct FreqSetSpec {
  SystemPtr system;
  int m = 1;
  FrequencyVector p;
  int n = 2;
  Rational eps;

  // Throws InputError unless n > m, 0 < eps < 1 and the alphabets agree.
  void validate() const;
};

// Integer form of the strict bounds p_w - eps < c_w / (n - m) < p_w + eps:
// lo[w] <= c_w <= hi[w]. A window with lo > hi admits nothing.
struct CountWindow {
  std::uint64_t windows = 0;  // n - m
  std::vector<std::int64_t> lo;
  std::vector<std::int64_t> hi;

  bool admits(std::span<const std::uint64_t> counts) const;
};

CountWindow count_window(const FreqSetSpec& spec);

// Finite union of distinct admissible generation-n cylinders, kept as word
// codes in increasing (equivalently lexicographic, equivalently left to
// right) order.
class CylinderUnion {
 public:
  // Sorts and deduplicates; throws AdmissibilityError for unrealized words.
  CylinderUnion(SystemPtr system, int generation, std::vector<std::uint64_t> codes);

  // Every admissible word of the given generation.
  static CylinderUnion all(const SystemPtr& system, int generation);

  const SystemPtr& system() const { return system_; }
  int generation() const { return generation_; }
  std::size_t size() const { return codes_.size(); }
  bool empty() const { return codes_.empty(); }
  const std::vector<std::uint64_t>& codes() const { return codes_; }
  Word word(std::size_t i) const;
  Cylinder member(std::size_t i) const;
  bool contains(std::uint64_t code) const;

  // Exact total length (Lebesgue measure).
  FieldElement total_length() const;

 private:
  SystemPtr system_;
  int generation_;
  std::vector<std::uint64_t> codes_;
};

// Default cap on enumeration nodes.
inline constexpr std::size_t kDefaultNodeBudget = std::size_t{1} << 26;

// Branch-and-bound enumeration over admissible words. A prefix is cut when
// some count already exceeds its window, when the remaining windows cannot
// lift every count to its lower bound, or both. Throws ResourceError with
// the number of nodes explored and members found.
CylinderUnion build_freqset(const FreqSetSpec& spec, std::size_t budget = kDefaultNodeBudget);

// Same result by testing every admissible word; for cross-checks.
CylinderUnion build_freqset_naive(const FreqSetSpec& spec);

// Strict-bound test on a generation-n word. Throws AdmissibilityError for
// unrealized words.
bool in_freqset(const FreqSetSpec& spec, const Word& word);
// Tests the generation-n prefix of x.
bool in_freqset(const FreqSetSpec& spec, const FieldElement& x);

// U restricted to [lo, hi): members inside, and at most two members cut by
// an endpoint, each with its clipped interval.
struct ClippedMember {
  std::size_t index;
  FieldElement left;
  FieldElement right;
};

struct Restriction {
  std::vector<std::size_t> inside;
  std::vector<ClippedMember> clipped;
};

Restriction union_restrict(const CylinderUnion& u, const FieldElement& lo, const FieldElement& hi);
Restriction union_restrict(const CylinderUnion& u, const Rational& lo, const Rational& hi);

}  // namespace freqdim

#endif  // FREQDIM_FREQSET_HPP_
