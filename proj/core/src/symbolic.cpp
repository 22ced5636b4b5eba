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

#include "freqdim/symbolic.hpp"

#include <algorithm>

#include "freqdim/errors.hpp"

namespace freqdim {
namespace {

void check_sequence(std::span<const Digit> seq, int alphabet_size, int m, std::size_t n) {
  if (m < 1) throw InputError("word length must be >= 1");
  if (n <= static_cast<std::size_t>(m)) throw InputError("horizon n must exceed the word length m");
  if (seq.size() < n) {
    throw InputError("horizon " + std::to_string(n) + " exceeds the " +
                     std::to_string(seq.size()) + " available digits");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (seq[i] >= alphabet_size) {
      throw InputError("digit at position " + std::to_string(i) + " outside alphabet of size " +
                       std::to_string(alphabet_size));
    }
  }
}

}  // namespace

std::uint64_t count_word_occurrences(std::span<const Digit> seq, int alphabet_size,
                                     const Word& w, std::size_t n) {
  if (w.alphabet_size() != alphabet_size) {
    throw InputError("word and sequence use different alphabets");
  }
  check_sequence(seq, alphabet_size, w.length(), n);
  const std::size_t windows = n - static_cast<std::size_t>(w.length());
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < windows; ++i) {
    if (std::equal(w.digits().begin(), w.digits().end(), seq.begin() + static_cast<std::ptrdiff_t>(i))) {
      ++count;
    }
  }
  return count;
}

EmpiricalFrequencies::EmpiricalFrequencies(int word_length, int alphabet_size,
                                           std::size_t horizon, std::vector<std::uint64_t> counts)
    : word_length_(word_length),
      alphabet_size_(alphabet_size),
      horizon_(horizon),
      counts_(std::move(counts)) {
  if (horizon_ <= static_cast<std::size_t>(word_length_)) {
    throw InputError("horizon n must exceed the word length m");
  }
  if (counts_.size() != word_count(alphabet_size_, word_length_)) {
    throw InputError("count vector must have g^m entries");
  }
  std::uint64_t total = 0;
  for (auto c : counts_) total += c;
  if (total != denominator()) throw InputError("word counts must sum to n - m");
}

FrequencyVector EmpiricalFrequencies::ratios() const {
  std::vector<Rational> entries;
  entries.reserve(counts_.size());
  const Integer den(denominator());
  for (auto c : counts_) entries.emplace_back(Integer(c), den);
  return FrequencyVector(word_length_, alphabet_size_, std::move(entries));
}

std::vector<double> EmpiricalFrequencies::ratio_doubles() const {
  std::vector<double> out;
  out.reserve(counts_.size());
  const auto den = static_cast<double>(denominator());
  for (auto c : counts_) out.push_back(static_cast<double>(c) / den);
  return out;
}

EmpiricalFrequencies empirical_frequencies(std::span<const Digit> seq, int alphabet_size,
                                           int word_length, std::size_t n) {
  check_sequence(seq, alphabet_size, word_length, n);
  std::vector<std::uint64_t> counts(word_count(alphabet_size, word_length), 0);
  const std::size_t windows = n - static_cast<std::size_t>(word_length);
  for (std::size_t i = 0; i < windows; ++i) {
    ++counts[window_code(seq, i, word_length, alphabet_size)];
  }
  return EmpiricalFrequencies(word_length, alphabet_size, n, std::move(counts));
}

std::size_t AccumulationReport::visits_near(const FrequencyVector& target,
                                            const Rational& radius) const {
  return static_cast<std::size_t>(
      std::count_if(trajectory.begin(), trajectory.end(),
                    [&](const FrequencyVector& p) { return sup_distance(p, target) <= radius; }));
}

nlohmann::json AccumulationReport::to_json() const {
  nlohmann::json out;
  out["checkpoints"] = checkpoints;
  nlohmann::json traj = nlohmann::json::array();
  for (const auto& p : trajectory) traj.push_back(p.to_doubles());
  out["trajectory"] = std::move(traj);
  nlohmann::json cl = nlohmann::json::array();
  for (const auto& c : clusters) {
    cl.push_back({{"center", c.center.to_doubles()},
                  {"visits", c.members.size()},
                  {"radius", c.max_distance.convert_to<double>()}});
  }
  out["clusters"] = std::move(cl);
  return out;
}

AccumulationReport accumulation_estimate(std::span<const Digit> seq, int alphabet_size,
                                         int word_length,
                                         std::span<const std::size_t> checkpoints,
                                         const Rational& cluster_radius) {
  if (cluster_radius <= 0) throw InputError("cluster radius must be positive");
  if (checkpoints.empty()) throw InputError("at least one checkpoint is required");
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] <= static_cast<std::size_t>(word_length)) {
      throw InputError("checkpoints must exceed the word length");
    }
    if (i > 0 && checkpoints[i] <= checkpoints[i - 1]) {
      throw InputError("checkpoints must be strictly increasing");
    }
  }
  check_sequence(seq, alphabet_size, word_length, checkpoints.back());

  AccumulationReport report;
  report.word_length = word_length;
  report.alphabet_size = alphabet_size;
  report.checkpoints.assign(checkpoints.begin(), checkpoints.end());

  // Incremental window counts: after processing horizon n, windows
  // 0..n-m-1 are counted.
  std::vector<std::uint64_t> counts(word_count(alphabet_size, word_length), 0);
  std::size_t counted = 0;
  for (std::size_t n : checkpoints) {
    const std::size_t windows = n - static_cast<std::size_t>(word_length);
    for (; counted < windows; ++counted) {
      ++counts[window_code(seq, counted, word_length, alphabet_size)];
    }
    report.trajectory.push_back(
        EmpiricalFrequencies(word_length, alphabet_size, n, counts).ratios());
  }

  for (std::size_t i = 0; i < report.trajectory.size(); ++i) {
    const auto& point = report.trajectory[i];
    bool placed = false;
    for (auto& cluster : report.clusters) {
      Rational d = sup_distance(cluster.center, point);
      if (d <= cluster_radius) {
        cluster.members.push_back(i);
        cluster.max_distance = std::max(cluster.max_distance, d);
        placed = true;
        break;
      }
    }
    if (!placed) report.clusters.push_back({point, {i}, Rational(0)});
  }
  std::stable_sort(report.clusters.begin(), report.clusters.end(),
                   [](const FrequencyCluster& a, const FrequencyCluster& b) {
                     return a.members.size() > b.members.size();
                   });
  return report;
}

}  // namespace freqdim
