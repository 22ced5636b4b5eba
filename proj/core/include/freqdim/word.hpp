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

#ifndef FREQDIM_WORD_HPP_
#define FREQDIM_WORD_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "freqdim/number.hpp"

namespace freqdim {

using Digit = std::uint8_t;
using DigitSequence = std::vector<Digit>;

// A non-empty word over {0, ..., alphabet_size - 1}.
class Word {
 public:
  Word(std::vector<Digit> digits, int alphabet_size);

  // Parses "0110" (alphabets up to 10) or "0,1,10" (any alphabet).
  static Word parse(std::string_view text, int alphabet_size);

  // The word whose base-g positional value is `code`, padded to `length`.
  static Word from_code(std::uint64_t code, int length, int alphabet_size);

  int alphabet_size() const { return alphabet_size_; }
  int length() const { return static_cast<int>(digits_.size()); }
  std::span<const Digit> digits() const { return digits_; }
  Digit operator[](int i) const { return digits_[static_cast<std::size_t>(i)]; }

  // Base-g positional value; lexicographic order on equal-length words
  // matches numeric order of codes. Throws InputError on overflow.
  std::uint64_t code() const;

  std::string str() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) { return a.digits_ <=> b.digits_; }

 private:
  std::vector<Digit> digits_;
  int alphabet_size_;
};

// g^m, throwing InputError when it does not fit in 64 bits.
std::uint64_t word_count(int alphabet_size, int length);

// Base-g code of digits[start, start + length).
std::uint64_t window_code(std::span<const Digit> digits, std::size_t start, int length,
                          int alphabet_size);

// Renders a code of the given length like Word::str().
std::string code_string(std::uint64_t code, int length, int alphabet_size);

// Target or empirical frequencies of all g^m words of length m, indexed by
// word code (lexicographic order).
class FrequencyVector {
 public:
  // Entries must lie in [0, 1] and sum to 1 within `sum_tolerance` (exact
  // when the tolerance is zero).
  FrequencyVector(int word_length, int alphabet_size, std::vector<Rational> entries,
                  const Rational& sum_tolerance = Rational(0));

  // Parses a comma-separated list of g^m numbers ("0.3,0.7", "1/3,1/3,1/3").
  // Decimal input is accepted with a 1e-12 tolerance on the sum.
  static FrequencyVector parse(std::string_view text, int word_length, int alphabet_size);

  // All mass on the word with the given code.
  static FrequencyVector point_mass(int word_length, int alphabet_size, std::uint64_t code);

  int word_length() const { return word_length_; }
  int alphabet_size() const { return alphabet_size_; }
  std::size_t size() const { return entries_.size(); }
  const Rational& operator[](std::uint64_t code) const { return entries_[code]; }
  const std::vector<Rational>& entries() const { return entries_; }

  std::vector<double> to_doubles() const;

  // max_w |p_w - q_w|.
  friend Rational sup_distance(const FrequencyVector& a, const FrequencyVector& b);

  friend bool operator==(const FrequencyVector&, const FrequencyVector&) = default;

 private:
  int word_length_;
  int alphabet_size_;
  std::vector<Rational> entries_;
};

double sup_distance(std::span<const double> a, std::span<const double> b);

}  // namespace freqdim

#endif  // FREQDIM_WORD_HPP_
