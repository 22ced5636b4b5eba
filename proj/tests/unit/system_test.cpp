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
#include "freqdim/system.hpp"
#include "oracles.hpp"

namespace freqdim {
namespace {

std::string str(std::span<const Digit> d) {
  std::string out;
  for (Digit x : d) out += static_cast<char>('0' + x);
  return out;
}

std::string str(const std::vector<int>& d) {
  std::string out;
  for (int x : d) out += static_cast<char>('0' + x);
  return out;
}

Real golden_real() { return (1 + sqrt(Real(5))) / 2; }

TEST(Expand, ZeroGivesZeros) {
  for (const SystemPtr& s : {ExpansionSystem::base(3), ExpansionSystem::golden(), ExpansionSystem::tribonacci()}) {
    const DigitSequence d = expand(*s, Rational(0), 12);
    EXPECT_EQ(str(d), std::string(12, '0'));
  }
}

TEST(Expand, OneThirdInBaseTwo) {
  EXPECT_EQ(str(expand(*ExpansionSystem::base(2), Rational(1, 3), 6)), "010101");
}

TEST(Expand, GoldenHalfMatchesGreedyOracle) {
  const DigitSequence d = expand(*ExpansionSystem::golden(), Rational(1, 2), 10);
  EXPECT_EQ(str(d), str(oracle::greedy_digits(golden_real(), Real(1) / 2, 10)));
  EXPECT_EQ(str(d), "0100100100");
}

TEST(Expand, RandomPointsMatchGreedyOracle) {
  const SystemPtr tri = ExpansionSystem::tribonacci();
  const Real beta = oracle::polynomial_root({-1, -1, -1, 1}, Rational(18, 10), Rational(19, 10));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const Rational x(Integer(rng() >> 11), Integer(1) << 53);
    EXPECT_EQ(str(expand(*tri, x, 40)), str(oracle::greedy_digits(beta, to_real(x), 40)));
  }
}

TEST(Expand, RejectsPointsOutsideUnitInterval) {
  EXPECT_THROW(expand(*ExpansionSystem::base(2), Rational(1), 4), InputError);
  EXPECT_THROW(expand(*ExpansionSystem::golden(), Rational(-1, 2), 4), InputError);
}

TEST(Synthesize, Examples) {
  const SystemPtr b2 = ExpansionSystem::base(2);
  const Word zeros = Word::parse("0000", 2);
  EXPECT_TRUE(synthesize(*b2, zeros.digits()).is_zero());
  EXPECT_EQ(synthesize(*b2, Word::parse("101", 2).digits()).rational_value(), Rational(5, 8));
  const SystemPtr golden = ExpansionSystem::golden();
  const FieldElement v = synthesize(*golden, Word::parse("1010", 2).digits());
  const Real phi = golden_real();
  EXPECT_LT(abs(v.to_real() - (1 / phi + 1 / (phi * phi * phi))), Real(1e-45));
}

TEST(Synthesize, RejectsInadmissible) {
  EXPECT_THROW(synthesize(*ExpansionSystem::golden(), Word::parse("0110", 2).digits()), AdmissibilityError);
}

TEST(BetaExpansionOfOne, GoldenAndTribonacci) {
  const SystemPtr golden = ExpansionSystem::golden();
  const BetaOneExpansion g = beta_expansion_of_one(golden->field(), 64);
  EXPECT_TRUE(g.terminated);
  EXPECT_EQ(str(g.digits), "11");
  const BetaOneExpansion t = beta_expansion_of_one(ExpansionSystem::tribonacci()->field(), 64);
  EXPECT_TRUE(t.terminated);
  EXPECT_EQ(str(t.digits), "111");
}

TEST(BetaExpansionOfOne, NonTerminatingValue) {
  const Rational b(19, 10);
  const BetaOneExpansion r = beta_expansion_of_one(RationalInterval{b, b}, 64);
  EXPECT_FALSE(r.terminated);
  EXPECT_EQ(r.digits.size(), 64u);
  EXPECT_THROW(ExpansionSystem::beta_from_value("19/10", 256, 64), NonTerminatingError);
  EXPECT_THROW(ExpansionSystem::beta_from_value("1.9", 256, 64), PrecisionError);
  const FieldPtr q19 = NumberField::algebraic({Rational(-19, 10), 1}, Rational(1), Rational(2));
  EXPECT_THROW(ExpansionSystem::beta(q19, 64), InputError);
}

TEST(BetaExpansionOfOne, FromDecimalValue) {
  const SystemPtr tri = ExpansionSystem::beta_from_value("1.839286755214161132551852564653", 100);
  EXPECT_EQ(str(tri->expansion_of_one()), "111");
  EXPECT_NEAR(static_cast<double>(tri->beta_value().to_real()), 1.8392867552141612, 1e-15);
}

TEST(ForbiddenWords, Examples) {
  auto words = [](std::vector<Digit> d1) {
    std::vector<std::string> out;
    for (const Word& w : forbidden_words(d1)) out.push_back(w.str());
    return out;
  };
  EXPECT_EQ(words({1, 1}), (std::vector<std::string>{"11"}));
  EXPECT_EQ(words({1, 1, 1}), (std::vector<std::string>{"111"}));
  EXPECT_EQ(words({1, 0}), (std::vector<std::string>{"10", "11"}));
}

TEST(ForbiddenWords, GreedyOracleNeverSeesThem) {
  const auto golden = oracle::unseen_factors(golden_real(), 2, 4096, 40);
  EXPECT_EQ(golden, (std::vector<std::string>{"11"}));
  const Real tri = oracle::polynomial_root({-1, -1, -1, 1}, Rational(18, 10), Rational(19, 10));
  EXPECT_EQ(oracle::unseen_factors(tri, 3, 4096, 40), (std::vector<std::string>{"111"}));
}

TEST(Admissible, Examples) {
  const SystemPtr golden = ExpansionSystem::golden();
  EXPECT_TRUE(is_admissible(*golden, Word::parse("10101", 2).digits()));
  EXPECT_FALSE(is_admissible(*golden, Word::parse("0110", 2).digits()));
  const SystemPtr tri = ExpansionSystem::tribonacci();
  EXPECT_TRUE(is_admissible(*tri, Word::parse("110110", 2).digits()));
  EXPECT_FALSE(is_admissible(*tri, Word::parse("0111", 2).digits()));
}

TEST(Admissible, AutomatonAgreesWithFactorScan) {
  for (const SystemPtr& s : {ExpansionSystem::golden(), ExpansionSystem::tribonacci()}) {
    for (int n = 1; n <= 12; ++n) {
      for (std::uint64_t c = 0; c < (std::uint64_t{1} << n); ++c) {
        const Word w = Word::from_code(c, n, 2);
        EXPECT_EQ(is_admissible(*s, w.digits()), is_realized(*s, w.digits())) << w.str();
      }
    }
  }
}

TEST(Cylinder, LinearExamples) {
  const Cylinder c = cylinder(ExpansionSystem::base(2), Word::parse("101", 2));
  EXPECT_EQ(c.left().rational_value(), Rational(5, 8));
  EXPECT_EQ(c.right().rational_value(), Rational(6, 8));
  const Cylinder d = cylinder(ExpansionSystem::base(3), Word::parse("2", 3));
  EXPECT_EQ(d.left().rational_value(), Rational(2, 3));
  EXPECT_EQ(d.right().rational_value(), Rational(1));
}

TEST(Cylinder, GoldenTenRedecodes) {
  const SystemPtr golden = ExpansionSystem::golden();
  const Cylinder c = cylinder(golden, Word::parse("10", 2));
  const Real phi = golden_real();
  EXPECT_LT(abs(c.left().to_real() - 1 / phi), Real(1e-45));
  EXPECT_LT(abs(c.right().to_real() - 1), Real(1e-45));
  for (int i = 1; i < 64; ++i) {
    const Real x = c.left().to_real() + (c.right().to_real() - c.left().to_real()) * i / 64;
    const auto d = oracle::greedy_digits(phi, x, 2);
    EXPECT_EQ(d[0], 1);
    EXPECT_EQ(d[1], 0);
  }
  const Real below = c.left().to_real() - Real(1e-6);
  EXPECT_EQ(oracle::greedy_digits(phi, below, 1)[0], 0);
}

TEST(Cylinder, EndpointsSumToUnitInterval) {
  for (const SystemPtr& s : {ExpansionSystem::base(3), ExpansionSystem::golden(), ExpansionSystem::tribonacci(),
                             ExpansionSystem::linear({Rational(1, 3), Rational(2, 3)})}) {
    const int g = s->alphabet_size();
    FieldElement total(s->field(), Rational(0));
    FieldElement expect_left(s->field(), Rational(0));
    for (std::uint64_t c = 0; c < word_count(g, 6); ++c) {
      const Word w = Word::from_code(c, 6, g);
      if (!is_realized(*s, w.digits())) continue;
      const Cylinder cyl = cylinder(s, w);
      EXPECT_TRUE(cyl.left() == expect_left) << w.str();
      expect_left = cyl.right();
      total += cyl.length();
    }
    EXPECT_TRUE(total == FieldElement(s->field(), Rational(1)));
  }
}

TEST(FullCylinder, Examples) {
  const SystemPtr golden = ExpansionSystem::golden();
  EXPECT_TRUE(is_full_cylinder(*golden, Word::parse("0", 2)));
  EXPECT_FALSE(is_full_cylinder(*golden, Word::parse("1", 2)));
  EXPECT_TRUE(is_full_cylinder(*ExpansionSystem::base(3), Word::parse("2101", 3)));
}

TEST(FullCylinder, CompletionOfOne) {
  const SystemPtr golden = ExpansionSystem::golden();
  const Word w = Word::parse("1", 2);
  const Word full = full_completion(*golden, w);
  EXPECT_EQ(full.str(), "100");
  EXPECT_TRUE(is_full_cylinder(*golden, full));
  const FieldElement ratio = cylinder(golden, full).length() / cylinder(golden, w).length();
  EXPECT_GE(ratio, golden->beta_value().inverse());
}

TEST(FullCylinder, CompletionBoundProperty) {
  for (const SystemPtr& s : {ExpansionSystem::golden(), ExpansionSystem::tribonacci()}) {
    const FieldElement inv = s->beta_value().inverse();
    for (int n = 1; n <= 9; ++n) {
      for (std::uint64_t c = 0; c < (std::uint64_t{1} << n); ++c) {
        const Word w = Word::from_code(c, n, 2);
        if (!is_realized(*s, w.digits())) continue;
        const Word full = full_completion(*s, w);
        EXPECT_TRUE(is_full_cylinder(*s, full)) << w.str();
        EXPECT_GE(cylinder(s, full).length(), cylinder(s, w).length() * inv) << w.str();
      }
    }
  }
}

TEST(RatioConstant, LinearExamples) {
  const RatioConstant b2 = ratio_constant(*ExpansionSystem::base(2), 8);
  EXPECT_EQ(b2.min_ratio.rational_value(), Rational(1, 2));
  EXPECT_EQ(b2.constant.rational_value(), Rational(1));
  EXPECT_TRUE(b2.bound_satisfied);
  const RatioConstant lin = ratio_constant(*ExpansionSystem::linear({Rational(1, 3), Rational(2, 3)}), 8);
  EXPECT_EQ(lin.min_ratio.rational_value(), Rational(1, 3));
  EXPECT_EQ(lin.constant.rational_value(), Rational(3, 2));
}

TEST(RatioConstant, GoldenDepthTwelve) {
  const SystemPtr golden = ExpansionSystem::golden();
  const RatioConstant r = ratio_constant(*golden, 12);
  const FieldElement beta = golden->beta_value();
  EXPECT_GE(r.min_ratio, (beta * beta).inverse());
  // 1 / beta^2 is attained: a child of a full parent that is itself not full.
  EXPECT_TRUE(r.min_ratio == (beta * beta).inverse());
  EXPECT_TRUE(r.constant == beta);
}

TEST(SystemJson, ParsesAllForms) {
  using nlohmann::json;
  EXPECT_EQ(system_from_json(json{{"type", "linear"}, {"base", 3}})->alphabet_size(), 3);
  const SystemPtr lin = system_from_json(json::parse(R"({"type":"linear","branches":["1/3","2/3"]})"));
  EXPECT_EQ(lin->branch_lengths()[1], Rational(2, 3));
  const SystemPtr poly = system_from_json(json::parse(R"({"type":"beta","polynomial":[-1,-1,1],"isolating":["1.5","2"]})"));
  EXPECT_EQ(poly->forbidden().size(), 1u);
  const SystemPtr value = system_from_json(json::parse(R"({"type":"beta","value":"1.8392867552141611325518525646532866","precision_bits":100})"));
  EXPECT_EQ(value->expansion_of_one().size(), 3u);
}

TEST(SystemJson, ErrorsNameThePointer) {
  using nlohmann::json;
  try {
    system_from_json(json::parse(R"({"type":"linear","branches":["1/3","1/3"]})"), "/system");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("/system"), std::string::npos) << e.what();
  }
  try {
    system_from_json(json::parse(R"({"type":"beta","isolating":[1,2]})"), "/system");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("/system/polynomial"), std::string::npos) << e.what();
  }
  EXPECT_THROW(system_from_json(json::parse(R"({"type":"mystery"})")), InputError);
}

}  // namespace
}  // namespace freqdim
