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
#include "freqdim/freqset.hpp"
#include "oracles.hpp"

namespace freqdim {
namespace {

FreqSetSpec spec(const SystemPtr& sys, int m, const std::string& p, int n, const Rational& eps) {
  return FreqSetSpec{sys, m, FrequencyVector::parse(p, m, sys->alphabet_size()), n, eps};
}

std::vector<std::string> words(const CylinderUnion& u) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < u.size(); ++i) out.push_back(u.word(i).str());
  return out;
}

TEST(BuildFreqset, PointMassLeavesLastDigitFree) {
  const CylinderUnion u = build_freqset(spec(ExpansionSystem::base(2), 1, "1,0", 10, Rational(1, 10)));
  EXPECT_EQ(words(u), (std::vector<std::string>{"0000000000", "0000000001"}));
}

TEST(BuildFreqset, VacuousBoundKeepsEverything) {
  EXPECT_EQ(build_freqset(spec(ExpansionSystem::base(2), 1, "1/2,1/2", 5, Rational(6, 10))).size(), 32u);
}

TEST(BuildFreqset, GoldenMatchesFilteredAdmissibleWords) {
  const SystemPtr golden = ExpansionSystem::golden();
  EXPECT_EQ(CylinderUnion::all(golden, 8).size(), 55u);
  const FreqSetSpec s = spec(golden, 1, "1/2,1/2", 8, Rational(2, 10));
  const CylinderUnion all = CylinderUnion::all(golden, 8);
  std::size_t expected = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const Word w = all.word(i);
    std::vector<int> seq(w.digits().begin(), w.digits().end());
    const Rational ones(Integer(oracle::sliding_count(seq, {1}, 8)), Integer(7));
    if (Rational(3, 10) < ones && ones < Rational(7, 10)) ++expected;
  }
  EXPECT_EQ(build_freqset(s).size(), expected);
  EXPECT_EQ(expected, 15u);
}

TEST(BuildFreqset, MatchesNaiveOracleExhaustively) {
  const std::vector<Rational> eps_values = {Rational(1, 20), Rational(1, 10), Rational(1, 4)};
  for (int g = 2; g <= 4; ++g) {
    const SystemPtr sys = ExpansionSystem::base(g);
    for (int m = 1; m <= 2; ++m) {
      std::vector<std::string> targets;
      if (m == 1) {
        targets = g == 2 ? std::vector<std::string>{"1/2,1/2", "3/10,7/10", "1,0"}
                         : std::vector<std::string>{g == 3 ? "1/3,1/3,1/3" : "1/4,1/4,1/4,1/4"};
      } else {
        std::string uniform;
        for (int i = 0; i < g * g; ++i) uniform += (i ? "," : "") + std::string("1/") + std::to_string(g * g);
        targets = {uniform};
      }
      for (const auto& p : targets) {
        for (const auto& eps : eps_values) {
          for (int n = m + 1; word_count(g, n) <= (1u << 16); ++n) {
            const FreqSetSpec s = spec(sys, m, p, n, eps);
            const auto fast = build_freqset(s).codes();
            const auto slow = oracle::naive_freqset_codes(g, m, s.p.entries(), n, eps);
            ASSERT_EQ(fast, slow) << "g=" << g << " m=" << m << " p=" << p << " n=" << n;
            ASSERT_EQ(build_freqset_naive(s).codes(), slow);
          }
        }
      }
    }
  }
}

TEST(BuildFreqset, MonotoneInEps) {
  const SystemPtr sys = ExpansionSystem::base(3);
  const std::vector<Rational> eps = {Rational(1, 50), Rational(1, 20), Rational(1, 10), Rational(1, 5)};
  for (int n = 3; n <= 9; ++n) {
    std::vector<std::uint64_t> prev;
    for (const auto& e : eps) {
      const auto cur = build_freqset(spec(sys, 1, "1/3,1/3,1/3", n, e)).codes();
      EXPECT_TRUE(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
      prev = cur;
    }
  }
}

TEST(BuildFreqset, MultinomialCount) {
  for (int g = 2; g <= 3; ++g) {
    std::vector<Rational> uniform(static_cast<std::size_t>(g), Rational(1, g));
    std::string text;
    for (int i = 0; i < g; ++i) text += (i ? "," : "") + std::string("1/") + std::to_string(g);
    for (int n = 2; n <= (g == 2 ? 22 : 13); ++n) {
      for (const Rational eps : {Rational(1, 20), Rational(1, 8)}) {
        const auto u = build_freqset(spec(ExpansionSystem::base(g), 1, text, n, eps));
        EXPECT_EQ(Integer(u.size()), oracle::multinomial_member_count(g, uniform, n, eps)) << g << " " << n;
      }
    }
  }
  std::vector<Rational> p = {Rational(3, 10), Rational(7, 10)};
  for (int n = 2; n <= 22; ++n) {
    const auto u = build_freqset(spec(ExpansionSystem::base(2), 1, "3/10,7/10", n, Rational(1, 20)));
    EXPECT_EQ(Integer(u.size()), oracle::multinomial_member_count(2, p, n, Rational(1, 20)));
  }
}

TEST(BuildFreqset, StrictBoundsExcludeTies) {
  // 4 windows: a ratio of exactly 1/4 = 1/2 - 1/4 sits on the boundary.
  const auto u = build_freqset(spec(ExpansionSystem::base(2), 1, "1/2,1/2", 5, Rational(1, 4)));
  for (std::size_t i = 0; i < u.size(); ++i) {
    const Word w = u.word(i);
    std::vector<int> seq(w.digits().begin(), w.digits().end());
    EXPECT_EQ(oracle::sliding_count(seq, {1}, 5), 2u);
  }
}

TEST(BuildFreqset, BudgetExceeded) {
  try {
    build_freqset(spec(ExpansionSystem::base(2), 1, "1/2,1/2", 30, Rational(1, 20)), 1000);
    FAIL();
  } catch (const ResourceError& e) {
    EXPECT_GT(e.explored(), 1000u);
  }
}

TEST(BuildFreqset, SpecValidation) {
  EXPECT_THROW(spec(ExpansionSystem::base(2), 1, "1/2,1/2", 1, Rational(1, 10)).validate(), InputError);
  EXPECT_THROW(spec(ExpansionSystem::base(2), 1, "1/2,1/2", 5, Rational(0)).validate(), InputError);
  EXPECT_THROW(spec(ExpansionSystem::base(2), 1, "1/2,1/2", 5, Rational(1)).validate(), InputError);
}

TEST(Membership, ZeroIsInPointMassSet) {
  for (int n = 2; n <= 30; n += 7) {
    for (const Rational eps : {Rational(1, 1000), Rational(1, 3)}) {
      const FreqSetSpec s = spec(ExpansionSystem::base(2), 1, "1,0", n, eps);
      EXPECT_TRUE(in_freqset(s, FieldElement(NumberField::rationals(), Rational(0))));
    }
  }
}

TEST(Membership, AlternatingTenDigits) {
  const FreqSetSpec s = spec(ExpansionSystem::base(2), 1, "1/2,1/2", 10, Rational(1, 100));
  EXPECT_FALSE(in_freqset(s, Word::parse("0101010101", 2)));
}

TEST(Membership, RandomWordsAgreeWithRecount) {
  std::mt19937_64 rng(5);
  const FreqSetSpec s = spec(ExpansionSystem::base(2), 2, "1/4,1/4,1/4,1/4", 24, Rational(1, 10));
  for (int i = 0; i < 10000; ++i) {
    std::vector<Digit> d(24);
    std::vector<int> ref(24);
    for (int j = 0; j < 24; ++j) ref[static_cast<std::size_t>(j)] = d[static_cast<std::size_t>(j)] = static_cast<Digit>(rng() >> 63);
    bool expected = true;
    for (int w = 0; w < 4; ++w) {
      const Rational r(Integer(oracle::sliding_count(ref, {w >> 1, w & 1}, 24)), Integer(22));
      expected = expected && Rational(3, 20) < r && r < Rational(7, 20);
    }
    EXPECT_EQ(in_freqset(s, Word(d, 2)), expected);
  }
}

TEST(Membership, InadmissibleWordThrows) {
  const FreqSetSpec s = spec(ExpansionSystem::golden(), 1, "1/2,1/2", 4, Rational(1, 10));
  EXPECT_THROW(in_freqset(s, Word::parse("0110", 2)), AdmissibilityError);
}

TEST(Membership, LeftEndpointLeavesTheSet) {
  const SystemPtr b2 = ExpansionSystem::base(2);
  const Word w = Word::parse("0110", 2);
  bool left = false;
  for (int extra = 0; extra <= 40; ++extra) {
    std::vector<Digit> d(w.digits().begin(), w.digits().end());
    d.resize(d.size() + static_cast<std::size_t>(extra), 0);
    const int n = static_cast<int>(d.size());
    const FreqSetSpec s = spec(b2, 1, "1/2,1/2", n, Rational(1, 5));
    if (!in_freqset(s, Word(d, 2))) left = true;
    if (left) EXPECT_FALSE(in_freqset(s, Word(d, 2))) << n;
  }
  EXPECT_TRUE(left);
}

TEST(UnionRestrict, WholeInterval) {
  const CylinderUnion u = CylinderUnion::all(ExpansionSystem::base(2), 3);
  const Restriction r = union_restrict(u, Rational(0), Rational(1));
  EXPECT_EQ(r.inside.size(), 8u);
  EXPECT_TRUE(r.clipped.empty());
}

TEST(UnionRestrict, DyadicAlignment) {
  const CylinderUnion u = CylinderUnion::all(ExpansionSystem::base(2), 3);
  const Restriction r = union_restrict(u, Rational(1, 4), Rational(3, 4));
  std::vector<std::string> inside;
  for (auto i : r.inside) inside.push_back(u.word(i).str());
  EXPECT_EQ(inside, (std::vector<std::string>{"010", "011", "100", "101"}));
  EXPECT_TRUE(r.clipped.empty());
}

TEST(UnionRestrict, MatchesIntersectionOracle) {
  std::mt19937_64 rng(9);
  const SystemPtr b3 = ExpansionSystem::base(3);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4);
    std::vector<std::uint64_t> codes;
    for (std::uint64_t c = 0; c < word_count(3, n); ++c) {
      if (rng() >> 63) codes.push_back(c);
    }
    if (codes.empty()) codes.push_back(0);
    const CylinderUnion u(b3, n, codes);
    Rational a(static_cast<long>(rng() % 97), 97);
    Rational b(static_cast<long>(rng() % 97), 97);
    if (b < a) std::swap(a, b);
    if (trial == 0) {
      a = Rational(1, 2);
      b = Rational(1);
    }
    std::vector<oracle::Piece> members;
    for (std::size_t i = 0; i < u.size(); ++i) {
      members.push_back({u.member(i).left().rational_value(), u.member(i).right().rational_value()});
    }
    const auto expected = oracle::intersect_intervals(members, a, b);
    const Restriction r = union_restrict(u, a, b);
    std::vector<oracle::Piece> got;
    for (auto i : r.inside) got.push_back(members[i]);
    for (const auto& c : r.clipped) got.push_back({c.left.rational_value(), c.right.rational_value()});
    std::sort(got.begin(), got.end(), [](const auto& x, const auto& y) { return x.left < y.left; });
    ASSERT_EQ(got.size(), expected.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      EXPECT_EQ(got[i].left, expected[i].left);
      EXPECT_EQ(got[i].right, expected[i].right);
    }
    EXPECT_LE(r.clipped.size(), 2u);
  }
}

TEST(UnionRestrict, BaseThreeUpperHalf) {
  const CylinderUnion u = CylinderUnion::all(ExpansionSystem::base(3), 2);
  const Restriction r = union_restrict(u, Rational(1, 2), Rational(1));
  std::vector<std::string> inside;
  for (auto i : r.inside) inside.push_back(u.word(i).str());
  EXPECT_EQ(inside, (std::vector<std::string>{"12", "20", "21", "22"}));
  ASSERT_EQ(r.clipped.size(), 1u);
  EXPECT_EQ(u.word(r.clipped[0].index).str(), "11");
  EXPECT_EQ(r.clipped[0].left.rational_value(), Rational(1, 2));
  EXPECT_EQ(r.clipped[0].right.rational_value(), Rational(5, 9));
}

TEST(CylinderUnion, RejectsUnrealizedWords) {
  EXPECT_THROW(CylinderUnion(ExpansionSystem::golden(), 2, {3}), AdmissibilityError);
  const CylinderUnion u(ExpansionSystem::base(2), 3, {5, 1, 5});
  EXPECT_EQ(u.codes(), (std::vector<std::uint64_t>{1, 5}));
  EXPECT_EQ(u.total_length().rational_value(), Rational(1, 4));
}

}  // namespace
}  // namespace freqdim
