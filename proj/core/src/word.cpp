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

#include "freqdim/word.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "freqdim/errors.hpp"

namespace freqdim {

Word::Word(std::vector<Digit> digits, int alphabet_size)
    : digits_(std::move(digits)), alphabet_size_(alphabet_size) {
  if (alphabet_size_ < 1 || alphabet_size_ > 255) {
    throw InputError("alphabet size must lie in [1, 255]");
  }
  if (digits_.empty()) throw InputError("words must have length >= 1");
  for (Digit d : digits_) {
    if (d >= alphabet_size_) {
      throw InputError("digit " + std::to_string(d) + " outside alphabet of size " +
                       std::to_string(alphabet_size_));
    }
  }
}

Word Word::parse(std::string_view text, int alphabet_size) {
  std::vector<Digit> digits;
  if (text.find(',') != std::string_view::npos) {
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find(',', start);
      if (end == std::string_view::npos) end = text.size();
      std::string_view part = text.substr(start, end - start);
      if (part.empty() || part.size() > 3 ||
          !std::all_of(part.begin(), part.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        throw InputError("malformed digit '" + std::string(part) + "'");
      }
      digits.push_back(static_cast<Digit>(std::stoi(std::string(part))));
      start = end + 1;
    }
  } else {
    for (char c : text) {
      if (c < '0' || c > '9') throw InputError("malformed word '" + std::string(text) + "'");
      digits.push_back(static_cast<Digit>(c - '0'));
    }
  }
  return Word(std::move(digits), alphabet_size);
}

Word Word::from_code(std::uint64_t code, int length, int alphabet_size) {
  std::vector<Digit> digits(static_cast<std::size_t>(length));
  for (int i = length - 1; i >= 0; --i) {
    digits[static_cast<std::size_t>(i)] = static_cast<Digit>(code % alphabet_size);
    code /= static_cast<std::uint64_t>(alphabet_size);
  }
  if (code != 0) throw InputError("code does not fit in a word of the given length");
  return Word(std::move(digits), alphabet_size);
}

std::uint64_t Word::code() const {
  word_count(alphabet_size_, length());
  std::uint64_t c = 0;
  for (Digit d : digits_) c = c * static_cast<std::uint64_t>(alphabet_size_) + d;
  return c;
}

std::string Word::str() const {
  std::string out;
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    if (alphabet_size_ > 10) {
      if (i > 0) out += ',';
      out += std::to_string(digits_[i]);
    } else {
      out += static_cast<char>('0' + digits_[i]);
    }
  }
  return out;
}

std::uint64_t word_count(int alphabet_size, int length) {
  if (alphabet_size < 1 || length < 0) throw InputError("invalid word-count arguments");
  std::uint64_t count = 1;
  for (int i = 0; i < length; ++i) {
    if (count > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(alphabet_size)) {
      throw InputError("g^n overflows 64-bit word codes");
    }
    count *= static_cast<std::uint64_t>(alphabet_size);
  }
  return count;
}

std::uint64_t window_code(std::span<const Digit> digits, std::size_t start, int length,
                          int alphabet_size) {
  std::uint64_t c = 0;
  for (int i = 0; i < length; ++i) {
    c = c * static_cast<std::uint64_t>(alphabet_size) + digits[start + static_cast<std::size_t>(i)];
  }
  return c;
}

std::string code_string(std::uint64_t code, int length, int alphabet_size) {
  return Word::from_code(code, length, alphabet_size).str();
}

FrequencyVector::FrequencyVector(int word_length, int alphabet_size,
                                 std::vector<Rational> entries, const Rational& sum_tolerance)
    : word_length_(word_length), alphabet_size_(alphabet_size), entries_(std::move(entries)) {
  if (word_length_ < 1) throw InputError("frequency vectors need word length >= 1");
  if (entries_.size() != word_count(alphabet_size_, word_length_)) {
    throw InputError("frequency vector must have exactly g^m = " +
                     std::to_string(word_count(alphabet_size_, word_length_)) + " entries, got " +
                     std::to_string(entries_.size()));
  }
  Rational sum = 0;
  for (const auto& p : entries_) {
    if (p < 0 || p > 1) throw InputError("frequency entries must lie in [0, 1]");
    sum += p;
  }
  if (boost::multiprecision::abs(sum - 1) > sum_tolerance) {
    throw InputError("frequency entries must sum to 1 (got " + format_rational(sum) + ")");
  }
}

FrequencyVector FrequencyVector::parse(std::string_view text, int word_length,
                                       int alphabet_size) {
  std::vector<Rational> entries;
  bool decimal = false;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view part = text.substr(start, end - start);
    if (part.find('.') != std::string_view::npos || part.find_first_of("eE") != std::string_view::npos) {
      decimal = true;
    }
    entries.push_back(parse_rational(part));
    start = end + 1;
  }
  const Rational tolerance = decimal ? Rational(1, 1000000000000LL) : Rational(0);
  return FrequencyVector(word_length, alphabet_size, std::move(entries), tolerance);
}

FrequencyVector FrequencyVector::point_mass(int word_length, int alphabet_size,
                                            std::uint64_t code) {
  std::vector<Rational> entries(word_count(alphabet_size, word_length), Rational(0));
  if (code >= entries.size()) throw InputError("point-mass word out of range");
  entries[code] = 1;
  return FrequencyVector(word_length, alphabet_size, std::move(entries));
}

std::vector<double> FrequencyVector::to_doubles() const {
  std::vector<double> out;
  out.reserve(entries_.size());
  for (const auto& p : entries_) out.push_back(p.convert_to<double>());
  return out;
}

Rational sup_distance(const FrequencyVector& a, const FrequencyVector& b) {
  if (a.entries_.size() != b.entries_.size()) throw InputError("frequency vectors differ in size");
  Rational best = 0;
  for (std::size_t i = 0; i < a.entries_.size(); ++i) {
    best = std::max(best, Rational(boost::multiprecision::abs(a.entries_[i] - b.entries_[i])));
  }
  return best;
}

double sup_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InputError("vectors differ in size");
  double best = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) best = std::max(best, std::abs(a[i] - b[i]));
  return best;
}

}  // namespace freqdim
