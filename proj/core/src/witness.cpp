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


#include <algorithm>
#include <cmath>

#include "freqdim/dimension.hpp"
#include "freqdim/errors.hpp"

namespace freqdim {

OscillationWitness oscillation_witness(const SystemPtr& system, int m,
                                       const std::vector<FrequencyVector>& targets,
                                       std::size_t horizon, const WitnessOptions& options) {
  const ExpansionSystem& sys = *system;
  const int g = sys.alphabet_size();
  if (targets.empty()) throw InputError("at least one target is required");
  if (horizon <= static_cast<std::size_t>(m) + 1) throw InputError("horizon must exceed m + 1");
  if (options.first_block == 0 || options.growth < 1) throw InputError("invalid block schedule");
  std::vector<std::vector<double>> goal;
  for (const auto& t : targets) {
    if (t.word_length() != m || t.alphabet_size() != g) {
      throw InputError("target does not match m and the system's alphabet");
    }
    if (sys.is_beta()) {
      const DimensionOracleResult oracle = entropy_dimension_oracle(sys, t);
      if (!oracle.s_star && oracle.reason.find("estimator only") == std::string::npos) {
        throw InputError("target not realizable on the beta-shift: " + oracle.reason);
      }
    }
    goal.push_back(t.to_doubles());
  }

  OscillationWitness out;
  out.digits.reserve(horizon);
  const std::uint64_t words = word_count(g, m);
  const std::uint64_t tail_size = word_count(g, m - 1);
  std::vector<std::uint64_t> counts(words, 0);
  std::uint64_t tail = 0;
  int state = 0;
  std::vector<std::size_t> checkpoints;

  std::size_t block_length = options.first_block;
  for (std::size_t block = 0, start = 0; start < horizon; ++block) {
    const std::size_t length = std::min(block_length, horizon - start);
    const std::size_t target = block % targets.size();
    const auto& want = goal[target];
    for (std::size_t i = 0; i < length; ++i) {
      const std::size_t pos = out.digits.size();
      const bool completes = pos + 1 >= static_cast<std::size_t>(m);
      const double windows = completes ? static_cast<double>(pos + 2 - static_cast<std::size_t>(m)) : 1.0;
      int best = -1;
      double best_dev = 0;
      for (int d = 0; d < g; ++d) {
        if (!sys.transition(state, static_cast<Digit>(d))) continue;
        const std::uint64_t wc = tail * static_cast<std::uint64_t>(g) + static_cast<std::uint64_t>(d);
        double dev = 0;
        if (completes) {
          for (std::uint64_t w = 0; w < words; ++w) {
            const double c = static_cast<double>(counts[w] + (w == wc ? 1 : 0));
            dev = std::max(dev, std::abs(c / windows - want[w]));
          }
        }
        if (best < 0 || dev < best_dev) {
          best = d;
          best_dev = dev;
        }
      }
      const auto d = static_cast<Digit>(best);
      const std::uint64_t wc = tail * static_cast<std::uint64_t>(g) + d;
      if (completes) ++counts[wc];
      tail = m == 1 ? 0 : wc % tail_size;
      state = sys.transition(state, d)->next_state;
      out.digits.push_back(d);
    }
    WitnessBlock wb{start, length, target, 0.0, 0.0};
    const std::size_t end = start + length;
    if (end > static_cast<std::size_t>(m)) {
      checkpoints.push_back(end);
      const EmpiricalFrequencies freq = empirical_frequencies(out.digits, g, m, end);
      wb.deviation = sup_distance(freq.ratio_doubles(), want);
      wb.slack = wb.deviation * static_cast<double>(length) - m;
    }
    out.blocks.push_back(wb);
    start = end;
    block_length *= options.growth;
  }
  for (std::size_t k = 1; k <= options.grid_checkpoints; ++k) {
    const std::size_t n = horizon * k / options.grid_checkpoints;
    if (n > static_cast<std::size_t>(m)) checkpoints.push_back(n);
  }
  std::sort(checkpoints.begin(), checkpoints.end());
  checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()), checkpoints.end());
  out.report = accumulation_estimate(out.digits, g, m, checkpoints, options.cluster_radius);
  return out;
}

}  // namespace freqdim
