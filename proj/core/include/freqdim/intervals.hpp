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


// Cylinder unions as sorted disjoint half-open intervals, with exact
// comparisons against dyadic points.

#ifndef FREQDIM_INTERVALS_HPP_
#define FREQDIM_INTERVALS_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "freqdim/freqset.hpp"

namespace freqdim {

// The point index / 2^depth, depth <= kMaxDyadicDepth.
struct DyadicPoint {
  std::uint64_t index;
  int depth;

  Rational value() const;
};

inline constexpr int kMaxDyadicDepth = 62;

class IntervalUnion {
 public:
  // Merges members that touch into maximal runs.
  explicit IntervalUnion(const CylinderUnion& u);

  std::size_t size() const { return run_first_.size(); }
  bool empty() const { return run_first_.empty(); }

  // sign(left(run) - q) and sign(right(run) - q), exact.
  int compare_left(std::size_t run, const DyadicPoint& q) const;
  int compare_right(std::size_t run, const DyadicPoint& q) const;

  FieldElement left(std::size_t run) const;
  FieldElement right(std::size_t run) const;

  // Lebesgue measure of run intersected with [a, b), rounded to Real.
  Real overlap(std::size_t run, const DyadicPoint& a, const DyadicPoint& b) const;

  // Total Lebesgue measure, rounded to Real.
  Real mass() const;

 private:
  bool uniform_grid() const { return grid_denominator_ != 0; }

  SystemPtr system_;
  // For base-g systems every endpoint is code / g^n; runs are code ranges.
  std::uint64_t grid_denominator_ = 0;
  std::vector<std::uint64_t> run_first_;  // first member code, or member index
  std::vector<std::uint64_t> run_end_;    // one past the last code
  // Exact endpoints otherwise.
  std::vector<FieldElement> left_;
  std::vector<FieldElement> right_;
};

}  // namespace freqdim

#endif  // FREQDIM_INTERVALS_HPP_
