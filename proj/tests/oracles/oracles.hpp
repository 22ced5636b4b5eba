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


// Reference implementations used only by tests. Each one is written from the
// definitions with the simplest possible algorithm and shares no code with
// the library beyond its value types.
#ifndef FREQDIM_TESTS_ORACLES_HPP_
#define FREQDIM_TESTS_ORACLES_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "freqdim/netmeasure.hpp"
#include "freqdim/number.hpp"

namespace freqdim::oracle {

// Occurrences of w among windows 0..n-m-1 of seq, by direct comparison.
std::uint64_t sliding_count(const std::vector<int>& seq, const std::vector<int>& w, std::size_t n);

// Greedy digits of x in base beta, in MPFR floating point.
std::vector<int> greedy_digits(const Real& beta, const Real& x, std::size_t n);

// Largest real root of the monic polynomial (ascending coefficients) in
// [lo, hi], by bisection.
Real polynomial_root(const std::vector<Rational>& poly, const Rational& lo, const Rational& hi);

// Length-k binary words that never occur in greedy expansions of the grid
// points j / samples, j = 0..samples-1, expanded to `length` digits.
std::vector<std::string> unseen_factors(const Real& beta, int k, std::size_t samples, std::size_t length);

// Every antichain cover of a union of generation-n cylinders of a uniform
// base-g system, reduced to its count vector (covers[j] = number of
// generation-j cylinders used). Returns the set of distinct count vectors.
std::vector<std::vector<std::uint64_t>> cover_count_vectors(int g, int n,
                                                            const std::vector<std::uint64_t>& codes);

struct CoverMinimum {
  Real value;
  std::vector<std::uint64_t> counts;
  PowerSum exact;
};

// Minimum of sum_j counts[j] * g^(-j s) over all covers.
CoverMinimum brute_force_net_measure(int g, int n, const std::vector<std::uint64_t>& codes,
                                     const Rational& s);

// Codes of every base-g word of length n whose m-word frequencies over the
// n - m windows lie strictly within eps of p.
std::vector<std::uint64_t> naive_freqset_codes(int g, int m, const std::vector<Rational>& p, int n,
                                               const Rational& eps);

// Member count of the base-g, m = 1 frequency set: g times the sum of
// multinomial coefficients over count vectors of n - 1 windows inside the
// strict window.
Integer multinomial_member_count(int g, const std::vector<Rational>& p, int n, const Rational& eps);

// Intersection of [a, b) with [lo, hi), or nothing.
struct Piece {
  Rational left;
  Rational right;
};
std::vector<Piece> intersect_intervals(const std::vector<Piece>& members, const Rational& lo,
                                       const Rational& hi);

// beta^-s * sum_{i < terms} (1 - 1/beta)^(i s).
Real q_partial_sum(const Real& beta, const Real& s, std::size_t terms);

// H(p) / ln g for the uniform base-g map, in long double.
long double entropy_ratio(const std::vector<long double>& p, int g);

}  // namespace freqdim::oracle

#endif  // FREQDIM_TESTS_ORACLES_HPP_
