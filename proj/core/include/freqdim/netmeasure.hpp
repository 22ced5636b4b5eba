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


// Net outer measures of cylinder unions: N^s (covers by cylinders of the
// expansion system) and M^s (covers by dyadic intervals), both with the
// infinite mesh, plus the Falconer-condition scanner.

#ifndef FREQDIM_NETMEASURE_HPP_
#define FREQDIM_NETMEASURE_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "freqdim/freqset.hpp"
#include "freqdim/intervals.hpp"

namespace freqdim {

// [2^scale * index, 2^scale * (index + 1)), scale <= 0.
struct DyadicInterval {
  int scale = 0;
  std::uint64_t index = 0;

  int depth() const { return -scale; }
  Rational left() const;
  Rational right() const;
  Rational length() const;
  friend bool operator==(const DyadicInterval&, const DyadicInterval&) = default;
};

// sum_i count_i * length_i^s kept symbolically: exact lengths with
// multiplicities.
class PowerSum {
 public:
  void add(const FieldElement& length, std::uint64_t count = 1);
  void add(const PowerSum& other);

  Real evaluate(const Rational& s) const;
  std::size_t term_count() const { return terms_.size(); }
  std::uint64_t piece_count() const;
  const std::map<FieldElement, std::uint64_t, CanonicalLess>& terms() const { return terms_; }

 private:
  std::map<FieldElement, std::uint64_t, CanonicalLess> terms_;
};

// Exact equality of the two real values at exponent s, or nullopt when no
// exact procedure applies. Decided exactly when the term lists coincide,
// when s = 1 (field arithmetic), and when every length is rational (the
// values are then sums of rational multiples of prime-power radicals,
// which are linearly independent over Q).
std::optional<bool> exactly_equal(const PowerSum& a, const PowerSum& b, const Rational& s);

// Same, falling back to agreement within 2^-140 relative.
bool values_agree(const PowerSum& a, const PowerSum& b, const Rational& s);

struct CylinderCoverElement {
  int generation;
  std::uint64_t code;
  friend bool operator==(const CylinderCoverElement&, const CylinderCoverElement&) = default;
};

struct CylinderNodeValue {
  std::uint64_t code;
  Real value;      // N^s(F ∩ C)
  Real size_pow;   // |C|^s
};

struct NetMeasureResult {
  Rational s;
  Real value;
  PowerSum exact;  // the witness cover, symbolically; evaluates to value
  std::vector<CylinderCoverElement> witness;
  // node_values[j]: cylinders of generation j meeting F, j <= record depth.
  std::vector<std::vector<CylinderNodeValue>> node_values;
};

// Minimum of sum |C_i|^s over covers of F by cylinders, by a bottom-up pass
// over the tree of prefixes of F's members: value(C) = min(|C|^s, sum of
// the children's values). Ties keep the parent. Requires 0 < s <= 1.
NetMeasureResult cylinder_net_measure(const CylinderUnion& f, const Rational& s,
                                      int record_depth = 0);

struct MeasureBound {
  Rational s;
  Real lower;
  Real upper;
  // Attains `upper`; covers F.
  std::vector<DyadicInterval> witness;
  PowerSum exact;  // symbolic value of the witness
  bool exact_value = false;  // no partial leaves: lower == upper
};

struct DyadicNodeValue {
  std::uint64_t index;
  Real lower;
  Real upper;
};

struct DyadicMeasureResult {
  MeasureBound bound;
  // records[d]: dyadic intervals of depth d meeting F, d <= record depth.
  std::vector<std::vector<DyadicNodeValue>> records;
  std::size_t partial_leaves = 0;
};

// M^s on [0, 1): value(I) = min(|I|^s, value(left half) + value(right half)).
// Intervals inside F contribute |I|^s, intervals missing F contribute 0.
// An interval at depth_cap that F meets only partially contributes |I|^s
// to the upper bound and (Lebesgue measure of F ∩ I)^s to the lower bound.
DyadicMeasureResult dyadic_outer_measure(const CylinderUnion& f, const Rational& s, int depth_cap,
                                         int record_depth = 0);

// Default depth cap: a few levels below the smallest member cylinder.
int default_depth_cap(const CylinderUnion& f);

struct MeasureComparison {
  Rational s;
  Real net;            // N^s(F)
  MeasureBound dyadic;  // M^s(F)
  // Comparison constants: 2 g K for linear systems; for beta-maps 2 beta C
  // (checked) and 2 beta C^2 (recorded).
  Real constant;
  std::optional<Real> alternative_constant;
  Real required;        // net / constant
  Real ratio;           // dyadic.lower / net
  bool passed = false;  // lower(M) >= required and upper(M) >= lower(M)
};

MeasureComparison measure_comparison_check(const CylinderUnion& f, const Rational& s,
                                           int ratio_depth = 12, int depth_cap = -1);

struct FalconerRow {
  DyadicInterval interval;
  Real lower;        // lower bound on M^s(F ∩ I)
  Real ratio_lower;  // lower / |I|^s
};

struct CylinderRow {
  int generation;
  std::uint64_t code;
  Real ratio;  // N^s(F ∩ C) / |C|^s
};

struct FalconerScan {
  Rational s;
  int max_depth = 0;
  Real c_min;
  DyadicInterval argmin;
  std::vector<FalconerRow> rows;  // intervals meeting F, by depth then index
  std::size_t disjoint_intervals = 0;
  Real cylinder_c_min;
  CylinderRow cylinder_argmin{0, 0, Real(0)};
  std::vector<CylinderRow> cylinder_rows;
};

// inf of M^s(F ∩ I) / |I|^s over dyadic I of depth <= max_depth meeting F,
// and the cylinder analogue with N^s over cylinders of generation
// <= max_depth.
FalconerScan falconer_condition_scan(const CylinderUnion& f, const Rational& s, int max_depth,
                                     int depth_cap = -1);

}  // namespace freqdim

#endif  // FREQDIM_NETMEASURE_HPP_
