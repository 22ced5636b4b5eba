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


#include <random>

#include <gtest/gtest.h>

#include "freqdim/errors.hpp"
#include "freqdim/netmeasure.hpp"
#include "oracles.hpp"

namespace freqdim {
namespace {

CylinderUnion random_subset(const SystemPtr& sys, int n, std::mt19937_64& rng) {
  const CylinderUnion all = CylinderUnion::all(sys, n);
  std::vector<std::uint64_t> codes;
  for (auto c : all.codes()) {
    if (rng() >> 63) codes.push_back(c);
  }
  if (codes.empty()) codes.push_back(all.codes().front());
  return CylinderUnion(sys, n, codes);
}

TEST(CylinderNetMeasure, SingleCylinder) {
  const SystemPtr b3 = ExpansionSystem::base(3);
  const NetMeasureResult r = cylinder_net_measure(CylinderUnion(b3, 4, {17}), Rational(4, 5));
  EXPECT_LT(abs(r.value - real_pow(Real(1) / 81, Real(4) / 5)), Real(1e-45));
  ASSERT_EQ(r.witness.size(), 1u);
  EXPECT_EQ(r.witness[0].generation, 4);
}

TEST(CylinderNetMeasure, LebesgueCaseTieKeepsParent) {
  const NetMeasureResult r = cylinder_net_measure(CylinderUnion(ExpansionSystem::base(2), 2, {0, 1, 2}), Rational(1));
  EXPECT_EQ(r.value, Real(3) / 4);
  ASSERT_EQ(r.witness.size(), 2u);
  EXPECT_EQ(r.witness[0], (CylinderCoverElement{1, 0}));
  EXPECT_EQ(r.witness[1], (CylinderCoverElement{2, 2}));
}

TEST(CylinderNetMeasure, WholeIntervalIsOne) {
  for (const Rational s : {Rational(1, 10), Rational(1, 2), Rational(1)}) {
    const NetMeasureResult r = cylinder_net_measure(CylinderUnion::all(ExpansionSystem::base(2), 1), s);
    EXPECT_EQ(r.value, Real(1));
    EXPECT_EQ(r.witness.size(), 1u);
  }
}

TEST(CylinderNetMeasure, MatchesBruteForceSmall) {
  std::mt19937_64 rng(21);
  const std::vector<Rational> exps = {Rational(3, 10), Rational(1, 2), Rational(4, 5), Rational(1)};
  for (int g = 2; g <= 3; ++g) {
    const SystemPtr sys = ExpansionSystem::base(g);
    for (int n = 1; n <= 3; ++n) {
      for (int trial = 0; trial < 40; ++trial) {
        const CylinderUnion u = random_subset(sys, n, rng);
        for (const auto& s : exps) {
          const NetMeasureResult r = cylinder_net_measure(u, s);
          const auto best = oracle::brute_force_net_measure(g, n, u.codes(), s);
          const auto eq = exactly_equal(r.exact, best.exact, s);
          ASSERT_TRUE(eq.has_value());
          EXPECT_TRUE(*eq) << "g=" << g << " n=" << n << " s=" << s;
        }
      }
    }
  }
}

TEST(CylinderNetMeasure, CountBandAtGenerationSix) {
  std::vector<std::uint64_t> codes;
  for (std::uint64_t c = 0; c < 64; ++c) {
    const int ones = __builtin_popcountll(c);
    if (ones >= 2 && ones <= 4) codes.push_back(c);
  }
  const Rational s(9, 10);
  const NetMeasureResult r = cylinder_net_measure(CylinderUnion(ExpansionSystem::base(2), 6, codes), s);
  const auto best = oracle::brute_force_net_measure(2, 6, codes, s);
  EXPECT_EQ(exactly_equal(r.exact, best.exact, s), std::optional<bool>(true));
}

TEST(CylinderNetMeasure, ExactSumEvaluatesToValue) {
  std::mt19937_64 rng(23);
  const SystemPtr golden = ExpansionSystem::golden();
  for (int trial = 0; trial < 50; ++trial) {
    const CylinderUnion u = random_subset(golden, 1 + static_cast<int>(rng() % 9), rng);
    const NetMeasureResult r = cylinder_net_measure(u, Rational(7, 10));
    EXPECT_LT(abs(r.exact.evaluate(Rational(7, 10)) - r.value), Real(1e-40));
    EXPECT_LE(r.value, Real(1) + Real(1e-40));
  }
}

TEST(CylinderNetMeasure, MonotoneUnderInclusion) {
  std::mt19937_64 rng(29);
  const SystemPtr b2 = ExpansionSystem::base(2);
  for (int trial = 0; trial < 50; ++trial) {
    const CylinderUnion big = random_subset(b2, 7, rng);
    std::vector<std::uint64_t> sub;
    for (auto c : big.codes()) {
      if (rng() >> 63) sub.push_back(c);
    }
    if (sub.empty()) continue;
    const Rational s(3, 5);
    EXPECT_LE(cylinder_net_measure(CylinderUnion(b2, 7, sub), s).value,
              cylinder_net_measure(big, s).value + Real(1e-40));
  }
}

TEST(DyadicOuterMeasure, WholeIntervalIsOne) {
  const DyadicMeasureResult r = dyadic_outer_measure(CylinderUnion::all(ExpansionSystem::base(2), 1), Rational(1, 2), 10);
  EXPECT_TRUE(r.bound.exact_value);
  EXPECT_EQ(r.bound.upper, Real(1));
  EXPECT_EQ(r.bound.lower, Real(1));
}

TEST(DyadicOuterMeasure, BaseThreeBracketCloses) {
  const DyadicMeasureResult r = dyadic_outer_measure(CylinderUnion::all(ExpansionSystem::base(3), 2), Rational(4, 5), 20);
  EXPECT_LE(r.bound.lower, Real(1));
  EXPECT_GE(r.bound.upper, Real(1));
  EXPECT_LT(r.bound.upper - r.bound.lower, Real(1e-3));
}

TEST(DyadicOuterMeasure, EqualsCylinderMeasureInBaseTwo) {
  std::mt19937_64 rng(31);
  const SystemPtr b2 = ExpansionSystem::base(2);
  for (int trial = 0; trial < 60; ++trial) {
    const CylinderUnion u = random_subset(b2, 1 + static_cast<int>(rng() % 10), rng);
    for (const Rational s : {Rational(1, 2), Rational(4, 5), Rational(1)}) {
      const DyadicMeasureResult d = dyadic_outer_measure(u, s, default_depth_cap(u));
      const NetMeasureResult c = cylinder_net_measure(u, s);
      ASSERT_TRUE(d.bound.exact_value);
      EXPECT_EQ(exactly_equal(d.bound.exact, c.exact, s), std::optional<bool>(true));
    }
  }
}

TEST(DyadicOuterMeasure, BoundsAreOrderedForBetaSets) {
  std::mt19937_64 rng(37);
  const SystemPtr golden = ExpansionSystem::golden();
  for (int trial = 0; trial < 30; ++trial) {
    const CylinderUnion u = random_subset(golden, 1 + static_cast<int>(rng() % 8), rng);
    const DyadicMeasureResult r = dyadic_outer_measure(u, Rational(4, 5), default_depth_cap(u));
    EXPECT_LE(r.bound.lower, r.bound.upper);
    EXPECT_LT(abs(r.bound.exact.evaluate(Rational(4, 5)) - r.bound.upper), Real(1e-40));
    // The witness intervals cover F: their total length bounds the mass.
    Rational total = 0;
    for (const auto& d : r.bound.witness) total += d.length();
    EXPECT_GE(to_real(total), IntervalUnion(u).mass() - Real(1e-40));
  }
}

TEST(DyadicOuterMeasure, DeeperCapTightensBracket) {
  const CylinderUnion u = CylinderUnion::all(ExpansionSystem::golden(), 5);
  Real prev_width = 10;
  for (int cap : {6, 10, 14, 18}) {
    const MeasureBound b = dyadic_outer_measure(u, Rational(1, 2), cap).bound;
    EXPECT_LE(b.upper - b.lower, prev_width + Real(1e-40));
    prev_width = b.upper - b.lower;
  }
}

TEST(MeasureComparison, BaseThreeAndGolden) {
  std::mt19937_64 rng(41);
  for (const SystemPtr& sys : {ExpansionSystem::base(3), ExpansionSystem::golden()}) {
    for (int trial = 0; trial < 15; ++trial) {
      const CylinderUnion u = random_subset(sys, 1 + static_cast<int>(rng() % 6), rng);
      const MeasureComparison c = measure_comparison_check(u, Rational(4, 5));
      EXPECT_TRUE(c.passed);
      EXPECT_GE(c.dyadic.lower, c.required);
      EXPECT_EQ(c.alternative_constant.has_value(), sys->is_beta());
    }
  }
}

TEST(FalconerScan, WholeIntervalGivesOne) {
  const FalconerScan scan = falconer_condition_scan(CylinderUnion::all(ExpansionSystem::base(2), 4), Rational(4, 5), 4);
  EXPECT_EQ(scan.c_min, Real(1));
  EXPECT_EQ(scan.rows.size(), 31u);
  EXPECT_EQ(scan.disjoint_intervals, 0u);
}

TEST(FalconerScan, SkipsIntervalsMissingTheSet) {
  const FalconerScan scan = falconer_condition_scan(CylinderUnion(ExpansionSystem::base(2), 3, {0}), Rational(1, 2), 3);
  EXPECT_EQ(scan.rows.size(), 4u);
  EXPECT_EQ(scan.disjoint_intervals, 11u);
  EXPECT_LT(abs(scan.c_min - 1 / sqrt(Real(8))), Real(1e-40));
  EXPECT_EQ(scan.argmin.scale, 0);
}

TEST(PowerSum, ExactEqualityCases) {
  const FieldPtr q = NumberField::rationals();
  PowerSum a;
  a.add(FieldElement(q, Rational(1, 2)), 2);
  PowerSum b;
  b.add(FieldElement(q, Rational(1)));
  EXPECT_EQ(exactly_equal(a, b, Rational(1)), std::optional<bool>(true));
  EXPECT_EQ(exactly_equal(a, b, Rational(1, 2)), std::optional<bool>(false));
  // 4 (1/4)^(1/2) and 2 * 1^(1/2) are both 2.
  PowerSum c;
  c.add(FieldElement(q, Rational(1, 4)), 4);
  PowerSum d;
  d.add(FieldElement(q, Rational(1)), 2);
  EXPECT_EQ(exactly_equal(c, d, Rational(1, 2)), std::optional<bool>(true));
  PowerSum e;
  e.add(FieldElement(q, Rational(1, 8)));
  PowerSum f;
  f.add(FieldElement(q, Rational(1, 64)), 2);
  EXPECT_EQ(exactly_equal(e, f, Rational(1, 3)), std::optional<bool>(true));
  PowerSum h;
  h.add(FieldElement(q, Rational(1, 2)));
  h.add(FieldElement(q, Rational(1, 3)));
  PowerSum k;
  k.add(FieldElement(q, Rational(5, 6)));
  EXPECT_EQ(exactly_equal(h, k, Rational(1, 2)), std::optional<bool>(false));
  EXPECT_EQ(exactly_equal(h, k, Rational(1)), std::optional<bool>(true));
}

}  // namespace
}  // namespace freqdim
