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

// Sliding-window word statistics of digit sequences.
//
// Windows follow one convention throughout: for horizon n and word length m
// exactly n - m windows are counted, starting at (0-based) positions
// 0, ..., n - m - 1. The last digit inside the horizon therefore never starts
// or completes a window when m = 1. Counting from 1 (positions 1..n-m) or
// from 0 (positions 0..n-m-1) describes the same set of windows.

#ifndef FREQDIM_SYMBOLIC_HPP_
#define FREQDIM_SYMBOLIC_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "freqdim/word.hpp"

namespace freqdim {

// tau_w(x, n): occurrences of w among the n - m windows of seq.
std::uint64_t count_word_occurrences(std::span<const Digit> seq, int alphabet_size,
                                     const Word& w, std::size_t n);

class EmpiricalFrequencies {
 public:
  EmpiricalFrequencies(int word_length, int alphabet_size, std::size_t horizon,
                       std::vector<std::uint64_t> counts);

  int word_length() const { return word_length_; }
  int alphabet_size() const { return alphabet_size_; }
  std::size_t horizon() const { return horizon_; }
  std::uint64_t denominator() const { return horizon_ - static_cast<std::size_t>(word_length_); }
  const std::vector<std::uint64_t>& counts() const { return counts_; }
  std::uint64_t count(std::uint64_t code) const { return counts_[code]; }

  // Exact ratios count / (n - m); they sum to exactly 1.
  FrequencyVector ratios() const;
  std::vector<double> ratio_doubles() const;

 private:
  int word_length_;
  int alphabet_size_;
  std::size_t horizon_;
  std::vector<std::uint64_t> counts_;
};

EmpiricalFrequencies empirical_frequencies(std::span<const Digit> seq, int alphabet_size,
                                           int word_length, std::size_t n);

struct FrequencyCluster {
  FrequencyVector center;           // first trajectory point assigned
  std::vector<std::size_t> members;  // trajectory indices, increasing
  Rational max_distance;             // sup-norm, over members
};

struct AccumulationReport {
  int word_length = 0;
  int alphabet_size = 0;
  std::vector<std::size_t> checkpoints;
  std::vector<FrequencyVector> trajectory;
  // Sorted by visit count, most visited first; ties keep discovery order.
  std::vector<FrequencyCluster> clusters;

  // Number of trajectory points within `radius` (sup-norm) of `target`.
  std::size_t visits_near(const FrequencyVector& target, const Rational& radius) const;

  nlohmann::json to_json() const;
};

// Finite-horizon view of the accumulation set: empirical m-word frequency
// vectors at each checkpoint, grouped by greedy first-fit clustering under
// the sup-norm.
AccumulationReport accumulation_estimate(std::span<const Digit> seq, int alphabet_size,
                                         int word_length,
                                         std::span<const std::size_t> checkpoints,
                                         const Rational& cluster_radius);

}  // namespace freqdim

#endif  // FREQDIM_SYMBOLIC_HPP_
