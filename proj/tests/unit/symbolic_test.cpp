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
#include "freqdim/symbolic.hpp"
#include "oracles.hpp"

namespace freqdim {
namespace {

DigitSequence digits(std::initializer_list<int> v) {
  DigitSequence out;
  for (int d : v) out.push_back(static_cast<Digit>(d));
  return out;
}

TEST(CountWordOccurrences, OverlappingWindow) {
  const DigitSequence seq = digits({1, 1, 0, 1});
  EXPECT_EQ(count_word_occurrences(seq, 2, Word::parse("11", 2), 4), 1u);
}

TEST(CountWordOccurrences, AllZeroWindows) {
  const DigitSequence seq = digits({0, 0, 0, 0, 0});
  EXPECT_EQ(count_word_occurrences(seq, 2, Word::parse("00", 2), 5), 3u);
}

TEST(CountWordOccurrences, OneThirdMatchesSlidingOracle) {
  DigitSequence seq;
  std::vector<int> ref;
  for (int i = 0; i < 20; ++i) {
    seq.push_back(static_cast<Digit>(i % 2));
    ref.push_back(i % 2);
  }
  const auto expected = oracle::sliding_count(ref, {0, 1}, 20);
  EXPECT_EQ(count_word_occurrences(seq, 2, Word::parse("01", 2), 20), expected);
  EXPECT_EQ(expected, 9u);
}

TEST(EmpiricalFrequencies, Alternating) {
  DigitSequence seq;
  for (int i = 0; i < 11; ++i) seq.push_back(static_cast<Digit>(i % 2));
  const EmpiricalFrequencies f = empirical_frequencies(seq, 2, 1, 11);
  EXPECT_EQ(f.denominator(), 10u);
  EXPECT_EQ(f.ratios()[0], Rational(1, 2));
  EXPECT_EQ(f.ratios()[1], Rational(1, 2));
}

TEST(EmpiricalFrequencies, ConstantSequencePairs) {
  const DigitSequence seq(12, 0);
  const FrequencyVector r = empirical_frequencies(seq, 2, 2, 12).ratios();
  EXPECT_EQ(r[0], Rational(1));
  EXPECT_EQ(r[1] + r[2] + r[3], Rational(0));
}

TEST(EmpiricalFrequencies, FairCoinIsNearUniform) {
  std::mt19937_64 rng(7);
  DigitSequence seq(1 << 14);
  for (auto& d : seq) d = static_cast<Digit>(rng() >> 63);
  const auto r = empirical_frequencies(seq, 2, 1, seq.size()).ratio_doubles();
  EXPECT_LT(std::abs(r[0] - 0.5), 0.05);
}

TEST(EmpiricalFrequencies, CountsSumToWindowsProperty) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int g = 2 + static_cast<int>(rng() % 3);
    const int m = 1 + static_cast<int>(rng() % 3);
    const std::size_t n = static_cast<std::size_t>(m) + 1 + rng() % 40;
    DigitSequence seq(n);
    for (auto& d : seq) d = static_cast<Digit>(rng() % static_cast<std::uint64_t>(g));
    const auto f = empirical_frequencies(seq, g, m, n);
    std::uint64_t total = 0;
    for (auto c : f.counts()) total += c;
    EXPECT_EQ(total, n - static_cast<std::size_t>(m));
    Rational sum = 0;
    const FrequencyVector r = f.ratios();
    for (const auto& x : r.entries()) sum += x;
    EXPECT_EQ(sum, Rational(1));
  }
}

TEST(EmpiricalFrequencies, AgreesWithSlidingOracle) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const int g = 2 + static_cast<int>(rng() % 2);
    const int m = 1 + static_cast<int>(rng() % 3);
    const std::size_t n = static_cast<std::size_t>(m) + 1 + rng() % 30;
    DigitSequence seq(n);
    std::vector<int> ref(n);
    for (std::size_t i = 0; i < n; ++i) {
      seq[i] = static_cast<Digit>(rng() % static_cast<std::uint64_t>(g));
      ref[i] = seq[i];
    }
    const auto f = empirical_frequencies(seq, g, m, n);
    for (std::uint64_t code = 0; code < word_count(g, m); ++code) {
      const Word w = Word::from_code(code, m, g);
      std::vector<int> wd(w.digits().begin(), w.digits().end());
      EXPECT_EQ(f.count(code), oracle::sliding_count(ref, wd, n));
    }
  }
}

TEST(EmpiricalFrequencies, AppendingDigitsMovesRatiosBoundedly) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 2);
    const std::size_t n = 10 + rng() % 30;
    const std::size_t k = 1 + rng() % 5;
    DigitSequence seq(n + k);
    for (auto& d : seq) d = static_cast<Digit>(rng() >> 63);
    const FrequencyVector a = empirical_frequencies(seq, 2, m, n).ratios();
    const FrequencyVector b = empirical_frequencies(seq, 2, m, n + k).ratios();
    EXPECT_LE(sup_distance(a, b), Rational(static_cast<long>(k) + m, static_cast<long>(n) - m));
  }
}

TEST(EmpiricalFrequencies, HorizonValidation) {
  const DigitSequence seq(5, 0);
  EXPECT_THROW(empirical_frequencies(seq, 2, 2, 2), InputError);
  EXPECT_THROW(empirical_frequencies(seq, 2, 1, 6), InputError);
}

TEST(AccumulationEstimate, ConstantSequenceSingleCluster) {
  const DigitSequence seq(256, 0);
  const std::vector<std::size_t> checkpoints = {16, 64, 128, 256};
  const auto report = accumulation_estimate(seq, 2, 1, checkpoints, Rational(1, 20));
  ASSERT_EQ(report.clusters.size(), 1u);
  EXPECT_EQ(report.clusters[0].center[0], Rational(1));
}

TEST(AccumulationEstimate, PeriodicPairs) {
  DigitSequence seq;
  for (int i = 0; i < 512; ++i) seq.push_back(static_cast<Digit>(i % 2));
  std::vector<std::size_t> checkpoints;
  for (std::size_t n = 64; n <= 512; n += 64) checkpoints.push_back(n);
  const auto report = accumulation_estimate(seq, 2, 2, checkpoints, Rational(1, 20));
  ASSERT_EQ(report.clusters.size(), 1u);
  const FrequencyVector target(2, 2, {Rational(0), Rational(1, 2), Rational(1, 2), Rational(0)});
  EXPECT_LE(sup_distance(report.clusters[0].center, target), Rational(1, 50));
  EXPECT_EQ(report.visits_near(target, Rational(1, 50)), checkpoints.size());
}

TEST(FrequencyVector, ParseAndValidate) {
  const FrequencyVector p = FrequencyVector::parse("0.3,0.7", 1, 2);
  EXPECT_EQ(p[0], Rational(3, 10));
  EXPECT_THROW(FrequencyVector::parse("0.3,0.6", 1, 2), InputError);
  EXPECT_THROW(FrequencyVector::parse("0.5,0.5", 2, 2), InputError);
  EXPECT_THROW(FrequencyVector::parse("-0.5,1.5", 1, 2), InputError);
}

TEST(Word, CodesRoundTrip) {
  const Word w = Word::parse("2101", 3);
  EXPECT_EQ(w.code(), 2u * 27 + 1u * 9 + 0u * 3 + 1u);
  EXPECT_EQ(Word::from_code(w.code(), 4, 3), w);
  EXPECT_EQ(code_string(w.code(), 4, 3), "2101");
  EXPECT_THROW(Word::parse("13", 3), InputError);
}

}  // namespace
}  // namespace freqdim
