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

// Expansion systems: full-branch piecewise-linear maps and greedy beta-maps
// whose expansion of 1 terminates.
//
// Both are modelled as a finite automaton over the image intervals of
// cylinders. If C_w is a generation-n cylinder, f^n maps it affinely onto
// [0, t) for one of finitely many right endpoints t; that endpoint is the
// automaton state. From state t, digit d owns the sub-interval
// [offset_d, offset_d + ratio_d * t') of [0, t), and f maps it onto [0, t').
// Piecewise-linear maps have a single state (t = 1). For beta-maps the
// states are 1 and the orbit points f^i(1), discovered by forward image
// tracking with exact arithmetic in Q(beta).

#ifndef FREQDIM_SYSTEM_HPP_
#define FREQDIM_SYSTEM_HPP_

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "freqdim/field.hpp"
#include "freqdim/word.hpp"

namespace freqdim {

enum class SystemKind { kLinear, kBeta };

struct Transition {
  int next_state;
  FieldElement offset;  // left end of the digit's sub-interval, image coordinates
  FieldElement ratio;   // contraction factor of the inverse branch
  FieldElement slope;   // 1 / ratio
};

class ExpansionSystem;
using SystemPtr = std::shared_ptr<const ExpansionSystem>;

class ExpansionSystem {
 public:
  // Full-branch increasing map with the given branch lengths (each > 0,
  // summing to 1). Distortion is exactly 1.
  static SystemPtr linear(std::vector<Rational> branch_lengths);
  static SystemPtr base(int g);

  // Greedy beta-map for beta the generator of `field`, 1 < beta < 2.
  // Throws NonTerminatingError if d(1, beta) does not terminate within
  // max_k digits.
  static SystemPtr beta(const FieldPtr& field, int max_k = 64);

  // Beta given only as a decimal value known to within 2^-precision_bits
  // (and half a unit in its last printed digit). The terminating expansion
  // of 1 is located with interval arithmetic; beta is then identified with
  // the root of x^k - j_0 x^(k-1) - ... - j_(k-1) inside the value's
  // uncertainty interval and handled exactly from there on.
  static SystemPtr beta_from_value(std::string_view value, unsigned precision_bits,
                                   int max_k = 64);

  static SystemPtr golden();      // x^2 = x + 1
  static SystemPtr tribonacci();  // x^3 = x^2 + x + 1

  SystemKind kind() const { return kind_; }
  bool is_beta() const { return kind_ == SystemKind::kBeta; }
  int alphabet_size() const { return alphabet_size_; }
  const FieldPtr& field() const { return field_; }

  int state_count() const { return static_cast<int>(image_right_.size()); }
  // Right endpoint of the image interval [0, t) of state q; state 0 is [0, 1).
  const FieldElement& image_right(int state) const { return image_right_[static_cast<std::size_t>(state)]; }
  const std::optional<Transition>& transition(int state, Digit d) const {
    return transitions_[static_cast<std::size_t>(state)][d];
  }

  // True when every transition has the same ratio (base-g maps and
  // beta-maps); then cylinder length depends only on generation and state.
  bool uniform_ratio() const { return uniform_ratio_; }

  // Piecewise-linear data.
  const std::vector<Rational>& branch_lengths() const { return branch_lengths_; }
  // sup of |(f^n)'(y)| / |(f^n)'(z)| over cylinders; exactly 1 here.
  const Rational& distortion() const { return distortion_; }

  // Beta data (empty for linear systems).
  FieldElement beta_value() const;
  const std::vector<Digit>& expansion_of_one() const { return expansion_of_one_; }
  const std::vector<Word>& forbidden() const { return forbidden_; }

  std::string description() const;
  nlohmann::json to_json() const;

  ExpansionSystem(const ExpansionSystem&) = delete;
  ExpansionSystem& operator=(const ExpansionSystem&) = delete;

 private:
  ExpansionSystem() = default;

  SystemKind kind_ = SystemKind::kLinear;
  int alphabet_size_ = 0;
  FieldPtr field_;
  std::vector<FieldElement> image_right_;
  std::vector<std::vector<std::optional<Transition>>> transitions_;
  bool uniform_ratio_ = false;
  std::vector<Rational> branch_lengths_;
  Rational distortion_{1};
  std::vector<Digit> expansion_of_one_;
  std::vector<Word> forbidden_;
};

struct BetaOneExpansion {
  std::vector<Digit> digits;  // j_0 ... j_(k-1), or the first max_k digits
  bool terminated = false;
};

// Greedy digits of 1 in base beta = generator of `field`, with an exact
// termination test in Q(beta).
BetaOneExpansion beta_expansion_of_one(const FieldPtr& field, int max_k);

// Same, with beta known only as an enclosure. Digit decisions demand a
// margin of 4x the enclosure radius; the working precision is doubled when
// rounding is the obstacle. Termination is reported when the orbit
// enclosure reaches 0 and the resulting polynomial has a root inside
// `beta` (verified exactly).
BetaOneExpansion beta_expansion_of_one(const RationalInterval& beta, int max_k);

// Enclosure of a decimal or fractional value: half a unit in the last decimal
// place, or 2^-precision_bits if that is wider.
RationalInterval beta_value_enclosure(std::string_view value, unsigned precision_bits);

// Length-k binary words w with w >=_lex d1 = j_0...j_(k-1). A sequence
// avoids all of them iff every shift is lexicographically below d1 0^inf.
std::vector<Word> forbidden_words(std::span<const Digit> d1);

// First n digits of x in [0, 1). Throws InputError for x outside [0, 1),
// PrecisionError naming the index of an undecidable digit.
DigitSequence expand(const ExpansionSystem& system, const FieldElement& x, std::size_t n);
DigitSequence expand(const ExpansionSystem& system, const Rational& x, std::size_t n);

// Left endpoint of the cylinder of `digits`: sum of i_k beta^-(k+1) for
// beta-maps. Throws AdmissibilityError.
FieldElement synthesize(const ExpansionSystem& system, std::span<const Digit> digits);

// Forbidden-factor test on digits followed by 0^(k-1): the finite word
// extends to an admissible sequence. Always true for linear systems when
// the digits are in range.
bool is_admissible(const ExpansionSystem& system, std::span<const Digit> digits);

// Automaton test: the cylinder of `digits` is non-empty.
bool is_realized(const ExpansionSystem& system, std::span<const Digit> digits);

// End state after reading `digits` from state 0, or nullopt if rejected.
std::optional<int> walk(const ExpansionSystem& system, std::span<const Digit> digits);

class Cylinder {
 public:
  const SystemPtr& system() const { return system_; }
  const Word& word() const { return word_; }
  int generation() const { return word_.length(); }
  const FieldElement& left() const { return left_; }
  const FieldElement& right() const { return right_; }
  FieldElement length() const { return right_ - left_; }
  // Automaton state after the word; the image of the cylinder under f^n is
  // [0, image_right(end_state)).
  int end_state() const { return end_state_; }

  bool contains(const FieldElement& x) const { return left_ <= x && x < right_; }

 private:
  friend Cylinder cylinder(const SystemPtr& system, const Word& word);
  Cylinder(SystemPtr system, Word word, FieldElement left, FieldElement right, int state)
      : system_(std::move(system)), word_(std::move(word)), left_(std::move(left)),
        right_(std::move(right)), end_state_(state) {}

  SystemPtr system_;
  Word word_;
  FieldElement left_;
  FieldElement right_;
  int end_state_;
};

// Exact cylinder of an admissible word. Throws AdmissibilityError when the
// cylinder is empty.
Cylinder cylinder(const SystemPtr& system, const Word& word);

// f^n maps the cylinder onto [0, 1).
bool is_full_cylinder(const ExpansionSystem& system, const Word& word);

// w 0^(l+1) where l is the largest number of appended zeros with
// C_w = C_(w 0^l). The result is full and |C_(w 0^(l+1))| >= |C_w| / beta.
Word full_completion(const ExpansionSystem& system, const Word& word);

struct RatioConstant {
  FieldElement min_ratio;               // min |C_(wd)| / |C_w| over the enumeration
  std::vector<Digit> argmin_parent;     // w (possibly empty: the root)
  Digit argmin_digit = 0;
  std::size_t cylinders_enumerated = 0;
  // Beta: C_beta = 1 / (beta r). Linear: K = max(distortion, 1 / (g r)),
  // the smallest K with r >= 1 / (g K).
  FieldElement constant;
  // Linear: r >= 1 / (g * distortion). Beta: always true.
  bool bound_satisfied = true;
};

// Enumerates every admissible cylinder up to `depth` generations. Throws
// ResourceError past `budget` cylinders.
RatioConstant ratio_constant(const ExpansionSystem& system, int depth,
                             std::size_t budget = std::size_t{1} << 24);

// Reads {"type":"linear","branches":[...]}, {"type":"linear","base":g},
// {"type":"beta","polynomial":[c0,c1,...],"isolating":[lo,hi]} or
// {"type":"beta","value":"1.839...","precision_bits":N}. Numbers may be
// JSON numbers or strings ("1/3"). Throws InputError naming the offending
// JSON pointer.
SystemPtr system_from_json(const nlohmann::json& spec, const std::string& pointer = "");

}  // namespace freqdim

#endif  // FREQDIM_SYSTEM_HPP_
