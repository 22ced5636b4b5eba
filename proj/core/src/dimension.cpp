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


#include "freqdim/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "freqdim/errors.hpp"

namespace freqdim {
namespace {

double plogp(double p) { return p > 0 ? p * std::log(p) : 0.0; }

// Spectral radius of a small nonnegative irreducible matrix, by power
// iteration on A + I with Collatz-Wielandt bounds as the stopping rule.
double spectral_radius(const std::vector<std::vector<double>>& a) {
  const std::size_t n = a.size();
  std::vector<double> v(n, 1.0);
  double upper = 0;
  for (int iter = 0; iter < 100000; ++iter) {
    std::vector<double> w(v);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) w[i] += a[i][j] * v[j];
    }
    double lower = std::numeric_limits<double>::infinity();
    upper = 0;
    for (std::size_t i = 0; i < n; ++i) {
      lower = std::min(lower, w[i] / v[i]);
      upper = std::max(upper, w[i] / v[i]);
    }
    const double norm = *std::max_element(w.begin(), w.end());
    for (auto& x : w) x /= norm;
    v = std::move(w);
    if (upper - lower <= 1e-14 * upper) break;
  }
  return upper - 1;
}

// Pressure of t * [digit = 1] on the automaton graph.
double pressure(const ExpansionSystem& sys, double t) {
  const auto n = static_cast<std::size_t>(sys.state_count());
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  for (int q = 0; q < sys.state_count(); ++q) {
    for (int d = 0; d < sys.alphabet_size(); ++d) {
      const auto& tr = sys.transition(q, static_cast<Digit>(d));
      if (tr) a[static_cast<std::size_t>(q)][static_cast<std::size_t>(tr->next_state)] += std::exp(t * d);
    }
  }
  return std::log(spectral_radius(a));
}

// Largest mean of the digit over cycles of the automaton graph (Karp).
double max_cycle_mean(const ExpansionSystem& sys) {
  const int n = sys.state_count();
  const double kNeg = -std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> dist(static_cast<std::size_t>(n) + 1,
                                        std::vector<double>(static_cast<std::size_t>(n), kNeg));
  dist[0][0] = 0;
  for (int k = 1; k <= n; ++k) {
    for (int q = 0; q < n; ++q) {
      if (dist[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(q)] == kNeg) continue;
      for (int d = 0; d < sys.alphabet_size(); ++d) {
        const auto& tr = sys.transition(q, static_cast<Digit>(d));
        if (!tr) continue;
        auto& cell = dist[static_cast<std::size_t>(k)][static_cast<std::size_t>(tr->next_state)];
        cell = std::max(cell, dist[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(q)] + d);
      }
    }
  }
  double best = kNeg;
  for (int v = 0; v < n; ++v) {
    const double dn = dist[static_cast<std::size_t>(n)][static_cast<std::size_t>(v)];
    if (dn == kNeg) continue;
    double worst = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n; ++k) {
      const double dk = dist[static_cast<std::size_t>(k)][static_cast<std::size_t>(v)];
      if (dk == kNeg) continue;
      worst = std::min(worst, (dn - dk) / (n - k));
    }
    best = std::max(best, worst);
  }
  return best;
}

// inf_t P(t) - t alpha by golden-section search on a convex function.
double sft_entropy(const ExpansionSystem& sys, double alpha) {
  auto f = [&](double t) { return pressure(sys, t) - t * alpha; };
  double lo = -60;
  double hi = 60;
  const double phi = (std::sqrt(5.0) - 1) / 2;
  double x1 = hi - phi * (hi - lo);
  double x2 = lo + phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
    if (f1 > f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = f(x1);
    }
  }
  return std::max(0.0, std::min(f1, f2));
}

std::string memo_key(int depth, int state, std::uint64_t tail, const std::vector<std::int16_t>& counts) {
  std::string key;
  key.reserve(16 + 2 * counts.size());
  key.append(reinterpret_cast<const char*>(&depth), sizeof depth);
  key.append(reinterpret_cast<const char*>(&state), sizeof state);
  key.append(reinterpret_cast<const char*>(&tail), sizeof tail);
  key.append(reinterpret_cast<const char*>(counts.data()), counts.size() * sizeof(std::int16_t));
  return key;
}

Real linear_k(const ExpansionSystem& sys) { return ratio_constant(sys, 1).constant.to_real(); }

}  // namespace

DimensionOracleResult entropy_dimension_oracle(const ExpansionSystem& system,
                                               const FrequencyVector& p) {
  DimensionOracleResult out;
  out.consistency_residual = 0;
  const int g = system.alphabet_size();
  const int m = p.word_length();
  if (p.alphabet_size() != g) throw InputError("frequency vector alphabet does not match the system");
  const std::vector<double> pd = p.to_doubles();

  if (system.is_beta()) {
    for (std::uint64_t c = 0; c < pd.size(); ++c) {
      if (pd[c] > 0 && !is_admissible(system, Word::from_code(c, m, g).digits())) {
        out.reason = "p charges the forbidden word " + code_string(c, m, g);
        return out;
      }
    }
  }
  // First-symbol marginal, and left/right (m-1)-marginals.
  std::vector<double> first(static_cast<std::size_t>(g), 0.0);
  const std::uint64_t tail_count = word_count(g, m - 1);
  std::vector<double> left(tail_count, 0.0);
  std::vector<double> right(tail_count, 0.0);
  for (std::uint64_t c = 0; c < pd.size(); ++c) {
    first[c / tail_count] += pd[c];
    left[c / static_cast<std::uint64_t>(g)] += pd[c];
    right[c % tail_count] += pd[c];
  }
  if (m >= 2) {
    double residual = 0;
    for (std::uint64_t u = 0; u < tail_count; ++u) residual = std::max(residual, std::abs(left[u] - right[u]));
    out.consistency_residual = residual;
    if (residual > 1e-9) {
      out.reason = "p is not shift-invariant (marginal residual " + std::to_string(residual) + ")";
      return out;
    }
  }

  double lyapunov = 0;
  if (system.is_beta()) {
    lyapunov = std::log(system.beta_value().to_real().convert_to<double>());
  } else {
    for (int a = 0; a < g; ++a) {
      lyapunov += first[static_cast<std::size_t>(a)] *
                  std::log(1.0 / system.branch_lengths()[static_cast<std::size_t>(a)].convert_to<double>());
    }
  }

  double entropy = 0;
  const int k = system.is_beta() ? static_cast<int>(system.expansion_of_one().size()) : 1;
  if (system.is_beta() && m == 1) {
    const double alpha = pd[1];
    const double top = max_cycle_mean(system);
    if (alpha > top + 1e-12) {
      out.reason = "digit frequency " + std::to_string(alpha) + " exceeds the largest frequency " +
                   std::to_string(top) + " available on the beta-shift";
      return out;
    }
    entropy = (alpha <= 0 || alpha >= top - 1e-12) ? 0.0 : sft_entropy(system, alpha);
    out.formula_id = "sft-max-entropy";
  } else if (system.is_beta() && m < k) {
    out.reason = "beta-map with 2 <= m < k: estimator only";
    return out;
  } else if (m == 1) {
    for (double x : pd) entropy -= plogp(x);
    out.formula_id = "entropy-ratio";
  } else {
    for (double x : pd) entropy -= plogp(x);
    for (double x : left) entropy += plogp(x);
    out.formula_id = "conditional-entropy";
  }
  out.s_star = Real(std::clamp(entropy / lyapunov, 0.0, 1.0));
  return out;
}

FreqSetMeasure::FreqSetMeasure(FreqSetSpec spec, const Rational& s)
    : spec_(std::move(spec)), s_(s), window_(count_window(spec_)) {
  if (s <= 0 || s > 1) throw InputError("exponent s must lie in (0, 1]");
  const ExpansionSystem& sys = *spec_.system;
  const Real rs = to_real(s);
  child_pow_.assign(static_cast<std::size_t>(sys.state_count()),
                    std::vector<Real>(static_cast<std::size_t>(sys.alphabet_size()), Real(0)));
  for (int q = 0; q < sys.state_count(); ++q) {
    for (int d = 0; d < sys.alphabet_size(); ++d) {
      const auto& t = sys.transition(q, static_cast<Digit>(d));
      if (!t) continue;
      const FieldElement ratio = t->ratio * sys.image_right(t->next_state) * sys.image_right(q).inverse();
      child_pow_[static_cast<std::size_t>(q)][static_cast<std::size_t>(d)] = real_pow(ratio.to_real(), rs);
    }
  }
}

Real FreqSetMeasure::eval(int depth, int state, std::uint64_t tail, std::vector<std::int16_t>& counts,
                          std::int64_t deficit) {
  if (depth == spec_.n) return Real(1);
  std::string key = memo_key(depth, state, tail, counts);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  const ExpansionSystem& sys = *spec_.system;
  const int g = sys.alphabet_size();
  const int m = spec_.m;
  const auto total = static_cast<std::int64_t>(window_.windows);
  const std::uint64_t tail_size = word_count(g, m - 1);
  Real sum = 0;
  for (int d = 0; d < g; ++d) {
    const auto& t = sys.transition(state, static_cast<Digit>(d));
    if (!t) continue;
    const std::uint64_t wc = tail * static_cast<std::uint64_t>(g) + static_cast<std::uint64_t>(d);
    const std::int64_t start = depth + 1 - m;
    std::int64_t child_deficit = deficit;
    bool counted = false;
    if (start >= 0 && start < total) {
      if (counts[wc] + 1 > window_.hi[wc]) continue;
      counted = true;
      if (++counts[wc] <= window_.lo[wc]) --child_deficit;
    }
    const std::int64_t done = std::clamp<std::int64_t>(start + 1, 0, total);
    if (child_deficit <= total - done) {
      sum += child_pow_[static_cast<std::size_t>(state)][static_cast<std::size_t>(d)] *
             eval(depth + 1, t->next_state, m == 1 ? 0 : wc % tail_size, counts, child_deficit);
    }
    if (counted) --counts[wc];
  }
  Real value = sum >= Real(1) - Real(1e-40) ? Real(1) : sum;
  memo_.emplace(std::move(key), value);
  return value;
}

Real FreqSetMeasure::total() {
  std::int64_t deficit = 0;
  for (std::size_t w = 0; w < window_.lo.size(); ++w) {
    if (window_.lo[w] > window_.hi[w]) return Real(0);
    deficit += window_.lo[w];
  }
  if (deficit > static_cast<std::int64_t>(window_.windows)) return Real(0);
  std::vector<std::int16_t> counts(window_.lo.size(), 0);
  return eval(0, 0, 0, counts, deficit);
}

Real FreqSetMeasure::normalized(const Word& prefix) {
  const ExpansionSystem& sys = *spec_.system;
  if (prefix.length() > spec_.n) throw InputError("prefix longer than the generation");
  if (prefix.alphabet_size() != sys.alphabet_size()) throw InputError("prefix alphabet mismatch");
  const int g = sys.alphabet_size();
  const int m = spec_.m;
  const auto total_windows = static_cast<std::int64_t>(window_.windows);
  std::int64_t deficit = 0;
  for (std::size_t w = 0; w < window_.lo.size(); ++w) {
    if (window_.lo[w] > window_.hi[w]) return Real(0);
    deficit += window_.lo[w];
  }
  std::vector<std::int16_t> counts(window_.lo.size(), 0);
  const std::uint64_t tail_size = word_count(g, m - 1);
  std::uint64_t tail = 0;
  int state = 0;
  for (int depth = 0; depth < prefix.length(); ++depth) {
    const Digit d = prefix[depth];
    const auto& t = sys.transition(state, d);
    if (!t) throw AdmissibilityError("prefix " + prefix.str() + " is not admissible");
    const std::uint64_t wc = tail * static_cast<std::uint64_t>(g) + d;
    const std::int64_t start = depth + 1 - m;
    if (start >= 0 && start < total_windows) {
      if (++counts[wc] > window_.hi[wc]) return Real(0);
      if (counts[wc] <= window_.lo[wc]) --deficit;
    }
    const std::int64_t done = std::clamp<std::int64_t>(start + 1, 0, total_windows);
    if (deficit > total_windows - done) return Real(0);
    tail = m == 1 ? 0 : wc % tail_size;
    state = t->next_state;
  }
  return eval(prefix.length(), state, tail, counts, deficit);
}

Real FreqSetMeasure::value(const Word& prefix) {
  const Cylinder c = cylinder(spec_.system, prefix);
  return normalized(prefix) * real_pow(c.length().to_real(), to_real(s_));
}

Real critical_threshold(const ExpansionSystem& system, const Rational& s) {
  const Real rs = to_real(s);
  if (system.is_beta()) {
    const FieldElement b = system.beta_value();
    return Real(1) / (2 * real_pow(b.to_real(), rs) * q_constant(s, b).value);
  }
  return Real(1) / real_pow(linear_k(system), rs);
}

CriticalExponentEstimate estimate_critical_exponent(const SystemPtr& system, int m,
                                                    const FrequencyVector& p, const Rational& eps,
                                                    const std::vector<int>& n_schedule,
                                                    const std::vector<Rational>& s_grid) {
  if (n_schedule.empty() || s_grid.empty()) throw InputError("empty schedule or exponent grid");
  for (std::size_t i = 1; i < n_schedule.size(); ++i) {
    if (n_schedule[i] <= n_schedule[i - 1]) throw InputError("n schedule must be increasing");
  }
  std::vector<Rational> grid = s_grid;
  std::sort(grid.begin(), grid.end());
  CriticalExponentEstimate est;
  est.eps = eps;
  est.n_schedule = n_schedule;
  est.threshold_id = system->is_beta() ? "1/(2 beta^s Q(s,beta))" : "1/K^s";
  for (const auto& s : grid) {
    CriticalExponentRow row;
    row.s = s;
    row.threshold = critical_threshold(*system, s);
    for (int n : n_schedule) {
      FreqSetMeasure measure(FreqSetSpec{system, m, p, n, eps}, s);
      row.values.push_back(measure.total());
    }
    const std::size_t tail = std::min<std::size_t>(3, row.values.size());
    const std::size_t from = row.values.size() - tail;
    bool sub = true;
    bool decreasing = true;
    for (std::size_t i = from; i < row.values.size(); ++i) {
      if (row.values[i] < row.threshold) sub = false;
      if (i > from && !(row.values[i] < row.values[i - 1])) decreasing = false;
    }
    const bool super = row.values.back() < row.threshold / 10 && decreasing;
    row.classification = sub ? "sub-critical" : (super ? "super-critical" : "inconclusive");
    est.rows.push_back(std::move(row));
  }

  // Exponent monotonicity of the table.
  for (std::size_t i = 1; i < est.rows.size(); ++i) {
    for (std::size_t j = 0; j < n_schedule.size(); ++j) {
      const Real& prev = est.rows[i - 1].values[j];
      if (est.rows[i].values[j] > prev * (1 + Real(1e-30))) est.monotone_in_s = false;
    }
  }
  if (!est.monotone_in_s) est.diagnostics.push_back("table increases in s for some n");

  est.s_lo = 0;
  bool have_lo = false;
  for (const auto& row : est.rows) {
    if (row.classification == "sub-critical") {
      est.s_lo = row.s;
      have_lo = true;
    }
  }
  if (!have_lo) est.diagnostics.push_back("no sub-critical exponent on the grid; lower end set to 0");
  est.s_hi = 1;
  bool have_hi = false;
  std::size_t inconclusive = 0;
  for (const auto& row : est.rows) {
    if (row.s <= est.s_lo) {
      if (row.classification == "super-critical") {
        est.diagnostics.push_back("super-critical s = " + format_rational(row.s) +
                                  " below the largest sub-critical s");
      }
      continue;
    }
    if (row.classification == "super-critical") {
      est.s_hi = row.s;
      have_hi = true;
      break;
    }
    ++inconclusive;
  }
  if (!have_hi) {
    est.diagnostics.push_back("no super-critical exponent above s_lo; upper end set to 1");
  }
  if (inconclusive > 0) {
    est.diagnostics.push_back(std::to_string(inconclusive) +
                              " inconclusive exponents widen the bracket");
  }
  return est;
}

QConstant q_constant(const Rational& s, const FieldElement& beta) {
  if (s <= 0 || s > 1) throw InputError("q_constant needs 0 < s <= 1");
  if (compare(beta, Rational(1)) <= 0 || compare(beta, Rational(2)) >= 0) {
    throw InputError("q_constant needs 1 < beta < 2");
  }
  QConstant out;
  if (s == 1) {
    const FieldElement inv = beta.inverse();
    const FieldElement one(beta.field(), Rational(1));
    FieldElement exact = inv / (one - (one - inv));
    out.value = exact.to_real();
    out.exact = std::move(exact);
    return out;
  }
  const Real b = beta.to_real();
  const Real rs = to_real(s);
  out.value = real_pow(b, -rs) / (1 - real_pow(1 - 1 / b, rs));
  return out;
}

ScalingReport cylinder_scaling_check(const FreqSetSpec& spec, const Rational& s,
                                     const std::vector<Word>& cylinders) {
  const ExpansionSystem& sys = *spec.system;
  ScalingReport report;
  report.s = s;
  const Real rs = to_real(s);
  if (sys.is_beta()) {
    const FieldElement b = sys.beta_value();
    report.bound = Real(1) / (2 * real_pow(b.to_real(), rs) * q_constant(s, b).value);
    report.bound_id = "1/(2 beta^s Q(s,beta))";
  } else {
    report.bound = Real(1) / real_pow(linear_k(sys), 2 * rs);
    report.bound_id = "1/K^(2s)";
  }
  FreqSetMeasure measure(spec, s);
  for (const auto& w : cylinders) {
    if (w.length() >= spec.n) throw InputError("sample cylinders must be shallower than n");
    const Cylinder c = cylinder(spec.system, w);
    const Real size_pow = real_pow(c.length().to_real(), rs);
    const Real ratio = measure.normalized(w);
    ScalingRow row{w, size_pow, ratio * size_pow, ratio, ratio >= report.bound};
    report.passed = report.passed && row.passed;
    report.rows.push_back(std::move(row));
  }
  return report;
}

IntersectionReport intersection_experiment(const std::vector<IntersectionSpec>& specs,
                                           const Rational& s_margin, int depth,
                                           std::size_t budget) {
  if (specs.empty()) throw InputError("intersection experiment needs at least one spec");
  if (s_margin < 0 || s_margin >= 1) throw InputError("s_margin must lie in [0, 1)");
  IntersectionReport report;
  report.s_margin = s_margin;
  report.depth = depth;
  for (const auto& spec : specs) {
    if (spec.p[0] == 1) {
      report.degenerate = true;
      report.s = 0;
      report.passed = true;
      report.notes.push_back("a target is the point mass on 0^m: the frequency set has dimension 0");
      return report;
    }
  }
  Rational smallest = 1;
  for (const auto& spec : specs) {
    IntersectionEntry entry;
    entry.oracle = entropy_dimension_oracle(*spec.system, spec.p);
    Rational si;
    if (entry.oracle.s_star) {
      // Rounded down to 10^-9 so that later comparisons stay exact.
      const Real scaled = *entry.oracle.s_star * 1000000000;
      si = Rational(Integer(boost::multiprecision::floor(scaled).convert_to<long long>()), Integer(1000000000));
    } else {
      std::vector<Rational> grid;
      for (int i = 1; i <= 20; ++i) grid.emplace_back(i, 20);
      const std::vector<int> schedule{std::max(spec.m + 1, spec.n - 8), std::max(spec.m + 2, spec.n - 4), spec.n};
      auto est = estimate_critical_exponent(spec.system, spec.m, spec.p, spec.eps, schedule, grid);
      entry.estimator_s = est.s_lo;
      si = est.s_lo - s_margin;
      report.notes.push_back("oracle unavailable (" + entry.oracle.reason +
                             "); estimator lower end used with a doubled margin");
    }
    smallest = std::min(smallest, si);
    report.entries.push_back(std::move(entry));
  }
  report.s = smallest - s_margin;
  if (report.s <= 0) {
    report.notes.push_back("exponent after the margin is not positive");
    report.passed = false;
    return report;
  }
  report.passed = true;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto& spec = specs[i];
    const CylinderUnion set = build_freqset(FreqSetSpec{spec.system, spec.m, spec.p, spec.n, spec.eps}, budget);
    FalconerScan scan = falconer_condition_scan(set, report.s, depth);
    auto& entry = report.entries[i];
    entry.members = set.size();
    entry.c_min = scan.c_min;
    entry.cylinder_c_min = scan.cylinder_c_min;
    entry.passed = scan.c_min > 0;
    report.passed = report.passed && entry.passed;
    report.scans.push_back(std::move(scan));
  }
  return report;
}

}  // namespace freqdim
