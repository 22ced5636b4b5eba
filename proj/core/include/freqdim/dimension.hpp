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


// Dimension oracles, the finite-depth critical-exponent estimator, the
// Q(s, beta) constant, oscillating digit sequences and the intersection
// experiment.

#ifndef FREQDIM_DIMENSION_HPP_
#define FREQDIM_DIMENSION_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "freqdim/freqset.hpp"
#include "freqdim/netmeasure.hpp"
#include "freqdim/symbolic.hpp"

namespace freqdim {

struct DimensionOracleResult {
  std::optional<Real> s_star;  // nullopt: unavailable
  std::string formula_id;
  Real consistency_residual;   // max |left marginal - right marginal|
  std::string reason;          // why the oracle is unavailable
};

// Entropy over Lyapunov exponent for the Markov measure of p:
//  "entropy-ratio"      linear maps, m = 1: H(p) / sum p_a ln(1/l_a);
//  "conditional-entropy" linear maps or beta-maps with m >= k: the entropy
//                       of m-blocks given their first m - 1 digits, over
//                       sum_a p_a ln(1/l_a) (ln beta for beta-maps);
//  "sft-max-entropy"    beta-maps, m = 1: the largest entropy of an
//                       invariant measure on the beta-shift with the given
//                       digit frequencies (a variational problem solved
//                       through the pressure of the frequency potential),
//                       over ln beta.
// Unavailable for shift-inconsistent p, p charging forbidden words, and
// beta-maps with 2 <= m < k.
DimensionOracleResult entropy_dimension_oracle(const ExpansionSystem& system,
                                               const FrequencyVector& p);

// N^s([0, 1) ∩ G(n, eps)) without listing G: the cylinder-tree recursion
// collapses onto (depth, automaton state, last m - 1 digits, window
// counts), since the normalized value N^s(C ∩ G) / |C|^s depends on
// nothing else.
class FreqSetMeasure {
 public:
  FreqSetMeasure(FreqSetSpec spec, const Rational& s);

  // N^s(G).
  Real total();
  // N^s(C_u ∩ G) / |C_u|^s for a prefix u (length <= n).
  Real normalized(const Word& prefix);
  // N^s(C_u ∩ G).
  Real value(const Word& prefix);

  std::size_t memo_size() const { return memo_.size(); }

 private:
  Real eval(int depth, int state, std::uint64_t tail, std::vector<std::int16_t>& counts,
            std::int64_t deficit);

  FreqSetSpec spec_;
  Rational s_;
  CountWindow window_;
  std::vector<std::vector<Real>> child_pow_;  // (|C_ud| / |C_u|)^s per (state, digit)
  std::unordered_map<std::string, Real> memo_;
};

struct CriticalExponentRow {
  Rational s;
  Real threshold;
  std::vector<Real> values;  // per n in the schedule
  std::string classification;  // "sub-critical", "super-critical", "inconclusive"
};

struct CriticalExponentEstimate {
  Rational eps;
  std::vector<int> n_schedule;
  std::vector<CriticalExponentRow> rows;
  Rational s_lo;
  Rational s_hi;
  std::string threshold_id;
  std::vector<std::string> diagnostics;
  bool monotone_in_s = true;
};

// Tail classification over the last three schedule points: sub-critical
// when every value stays >= threshold, super-critical when the last value
// is below 0.1 * threshold and the values strictly decrease. The bracket is
// [largest sub-critical s, smallest super-critical s above it]; 1 when no
// such s exists, 0 when nothing is sub-critical.
CriticalExponentEstimate estimate_critical_exponent(const SystemPtr& system, int m,
                                                    const FrequencyVector& p, const Rational& eps,
                                                    const std::vector<int>& n_schedule,
                                                    const std::vector<Rational>& s_grid);

// Threshold 1/K^s for linear maps; 1/(2 beta^s Q(s, beta)) for beta-maps.
Real critical_threshold(const ExpansionSystem& system, const Rational& s);

struct QConstant {
  Real value;
  std::optional<FieldElement> exact;  // s = 1
};

// beta^-s / (1 - (1 - 1/beta)^s), 0 < s <= 1.
QConstant q_constant(const Rational& s, const FieldElement& beta);

struct ScalingRow {
  Word cylinder;
  Real size_pow;  // |C|^s
  Real value;     // N^s(C ∩ G(n, eps))
  Real ratio;
  bool passed;
};

struct ScalingReport {
  Rational s;
  Real bound;
  std::string bound_id;
  std::vector<ScalingRow> rows;
  bool passed = true;
};

// Checks N^s(C ∩ G(n, eps)) >= bound * |C|^s for the given cylinders, with
// bound 1/K^(2s) (linear) or 1/(2 beta^s Q(s, beta)) (beta).
ScalingReport cylinder_scaling_check(const FreqSetSpec& spec, const Rational& s,
                                     const std::vector<Word>& cylinders);

struct WitnessBlock {
  std::size_t start;
  std::size_t length;
  std::size_t target;
  double deviation;  // sup distance to the target at the block end
  double slack;      // deviation * length - m
};

struct OscillationWitness {
  DigitSequence digits;
  std::vector<WitnessBlock> blocks;
  AccumulationReport report;
};

struct WitnessOptions {
  std::size_t first_block = 16;
  std::size_t growth = 16;
  std::size_t grid_checkpoints = 256;
  Rational cluster_radius{1, 20};
};

// Blocks of lengths first_block * growth^j cycle through the targets; each
// digit is the admissible one that brings the running m-word frequencies
// closest (sup-norm) to the current target, smallest digit on ties.
// Checkpoints are the block ends plus a regular grid.
OscillationWitness oscillation_witness(const SystemPtr& system, int m,
                                       const std::vector<FrequencyVector>& targets,
                                       std::size_t horizon, const WitnessOptions& options = {});

struct IntersectionSpec {
  SystemPtr system;
  int m = 1;
  FrequencyVector p;
  Rational eps;
  int n = 16;
};

struct IntersectionEntry {
  DimensionOracleResult oracle;
  std::optional<Rational> estimator_s;  // used when the oracle is unavailable
  std::size_t members = 0;
  Real c_min;
  Real cylinder_c_min;
  bool passed = false;
};

struct IntersectionReport {
  bool degenerate = false;  // some target is a point mass on 0^m
  Rational s;
  Rational s_margin;
  int depth = 0;
  std::vector<IntersectionEntry> entries;
  std::vector<FalconerScan> scans;
  bool passed = false;
  std::vector<std::string> notes;
};

IntersectionReport intersection_experiment(const std::vector<IntersectionSpec>& specs,
                                           const Rational& s_margin, int depth,
                                           std::size_t budget = kDefaultNodeBudget);

}  // namespace freqdim

#endif  // FREQDIM_DIMENSION_HPP_
