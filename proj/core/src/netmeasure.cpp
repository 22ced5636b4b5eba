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


#include "freqdim/netmeasure.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "freqdim/errors.hpp"

namespace freqdim {
namespace {

constexpr double kTieTolerance = 1e-40;

void check_exponent(const Rational& s) {
  if (s <= 0 || s > 1) throw InputError("exponent s must lie in (0, 1]");
}

// x * (1 - 2^-150): absorbs rounding in values used as lower bounds.
Real round_down(const Real& x) { return x - x * Real(ldexp(1.0, -150)); }

bool prefer_parent(const Real& parent, const Real& children) {
  return children >= parent * (1 - Real(kTieTolerance));
}

// Trial division; false if a cofactor above 10^12 remains.
bool factor(Integer x, std::map<std::uint64_t, long>& out, long sign) {
  for (std::uint64_t p = 2; p < 1000000 && x > 1; p += (p == 2 ? 1 : 2)) {
    if (Integer(p) * Integer(p) > x) break;
    while (x % p == 0) {
      x /= p;
      out[p] += sign;
    }
  }
  if (x > 1) {
    if (x > Integer(1000000000000LL)) return false;
    out[x.convert_to<std::uint64_t>()] += sign;
  }
  return true;
}

Integer ipow(std::uint64_t p, long e) {
  Integer r = 1;
  for (long i = 0; i < e; ++i) r *= p;
  return r;
}

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

using RadicalKey = std::vector<std::pair<std::uint64_t, long>>;

// Coefficients of a PowerSum on the basis of prime-power radicals.
std::optional<std::map<RadicalKey, Rational>> radical_form(const PowerSum& a, long u, long v,
                                                            int sign,
                                                            std::map<RadicalKey, Rational> acc) {
  for (const auto& [len, count] : a.terms()) {
    if (!len.is_rational()) return std::nullopt;
    const Rational& q = len.rational_value();
    std::map<std::uint64_t, long> exps;
    if (!factor(boost::multiprecision::numerator(q), exps, 1)) return std::nullopt;
    if (!factor(boost::multiprecision::denominator(q), exps, -1)) return std::nullopt;
    Rational coeff(static_cast<long long>(count));
    RadicalKey key;
    for (const auto& [p, e] : exps) {
      if (e == 0) continue;
      const long t = e * u;
      const long whole = floor_div(t, v);
      const long rest = t - whole * v;
      if (whole >= 0) coeff *= Rational(ipow(p, whole)); else coeff /= Rational(ipow(p, -whole));
      if (rest != 0) key.emplace_back(p, rest);
    }
    acc[key] += sign * coeff;
  }
  return acc;
}

}  // namespace

Rational DyadicInterval::left() const { return Rational(Integer(index), Integer(1) << depth()); }
Rational DyadicInterval::right() const { return Rational(Integer(index + 1), Integer(1) << depth()); }
Rational DyadicInterval::length() const { return Rational(Integer(1), Integer(1) << depth()); }

void PowerSum::add(const FieldElement& length, std::uint64_t count) {
  if (count == 0) return;
  terms_[length] += count;
}

void PowerSum::add(const PowerSum& other) {
  for (const auto& [len, count] : other.terms_) add(len, count);
}

Real PowerSum::evaluate(const Rational& s) const {
  const Real rs = to_real(s);
  Real total = 0;
  for (const auto& [len, count] : terms_) {
    total += Real(count) * real_pow(len.to_real(), rs);
  }
  return total;
}

std::uint64_t PowerSum::piece_count() const {
  std::uint64_t n = 0;
  for (const auto& [len, count] : terms_) n += count;
  return n;
}

std::optional<bool> exactly_equal(const PowerSum& a, const PowerSum& b, const Rational& s) {
  if (a.terms().size() == b.terms().size() &&
      std::equal(a.terms().begin(), a.terms().end(), b.terms().begin(),
                 [](const auto& x, const auto& y) {
                   return x.second == y.second && x.first.field() == y.first.field() &&
                          x.first == y.first;
                 })) {
    return true;
  }
  const Integer num = boost::multiprecision::numerator(s);
  const Integer den = boost::multiprecision::denominator(s);
  if (den < 100000) {
    const long u = num.convert_to<long>();
    const long v = den.convert_to<long>();
    auto left = radical_form(a, u, v, 1, {});
    if (left) {
      auto diff = radical_form(b, u, v, -1, std::move(*left));
      if (diff) {
        return std::all_of(diff->begin(), diff->end(),
                           [](const auto& kv) { return kv.second == 0; });
      }
    }
  }
  if (s == 1) {
    FieldPtr field;
    for (const auto* ps : {&a, &b}) {
      for (const auto& [len, count] : ps->terms()) {
        if (len.field()->is_rational()) continue;
        if (field && field != len.field()) return std::nullopt;
        field = len.field();
      }
    }
    if (!field) return std::nullopt;
    FieldElement total(field, Rational(0));
    for (const auto& [len, count] : a.terms()) {
      total += (len.field() == field ? len : FieldElement(field, len.rational_value())) *
               Rational(static_cast<long long>(count));
    }
    for (const auto& [len, count] : b.terms()) {
      total -= (len.field() == field ? len : FieldElement(field, len.rational_value())) *
               Rational(static_cast<long long>(count));
    }
    return total.is_zero();
  }
  return std::nullopt;
}

bool values_agree(const PowerSum& a, const PowerSum& b, const Rational& s) {
  if (auto exact = exactly_equal(a, b, s)) return *exact;
  const Real x = a.evaluate(s);
  const Real y = b.evaluate(s);
  const Real scale = std::max(abs(x), abs(y));
  return abs(x - y) <= scale * Real(ldexp(1.0, -140));
}

NetMeasureResult cylinder_net_measure(const CylinderUnion& f, const Rational& s, int record_depth) {
  check_exponent(s);
  const ExpansionSystem& sys = *f.system();
  const int g = sys.alphabet_size();
  const int n = f.generation();
  const Real rs = to_real(s);
  const int states = sys.state_count();
  record_depth = std::clamp(record_depth, 0, n);

  std::vector<Real> t_pow(static_cast<std::size_t>(states));
  std::vector<std::vector<Real>> ratio_pow(static_cast<std::size_t>(states),
                                           std::vector<Real>(static_cast<std::size_t>(g)));
  for (int q = 0; q < states; ++q) {
    t_pow[static_cast<std::size_t>(q)] = real_pow(sys.image_right(q).to_real(), rs);
    for (int d = 0; d < g; ++d) {
      const auto& t = sys.transition(q, static_cast<Digit>(d));
      if (t) ratio_pow[static_cast<std::size_t>(q)][static_cast<std::size_t>(d)] = real_pow(t->ratio.to_real(), rs);
    }
  }

  NetMeasureResult result;
  result.s = s;
  result.node_values.resize(static_cast<std::size_t>(record_depth) + 1);

  const auto un = static_cast<std::size_t>(n);
  std::vector<Digit> path(un, 0);
  std::vector<int> state(un + 1, 0);
  std::vector<Real> scale_pow(un + 1, Real(1));
  std::vector<Real> sum(un + 1, Real(0));
  std::vector<std::size_t> witness_start(un + 1, 0);
  std::vector<std::uint64_t> place(un + 1, 1);  // g^(n - d)
  for (int d = n - 1; d >= 0; --d) place[static_cast<std::size_t>(d)] = place[static_cast<std::size_t>(d) + 1] * static_cast<std::uint64_t>(g);
  std::uint64_t current = 0;

  auto close = [&](std::size_t d) {
    const Real own = scale_pow[d] * t_pow[static_cast<std::size_t>(state[d])];
    const std::uint64_t prefix = current / place[d];
    Real value;
    if (d == un || prefer_parent(own, sum[d])) {
      value = own;
      result.witness.resize(witness_start[d]);
      result.witness.push_back({static_cast<int>(d), prefix});
    } else {
      value = sum[d];
    }
    if (d <= static_cast<std::size_t>(record_depth)) result.node_values[d].push_back({prefix, value, own});
    if (d > 0) sum[d - 1] += value;
    return value;
  };

  std::vector<Digit> digits(un);
  bool first = true;
  for (std::uint64_t code : f.codes()) {
    std::uint64_t c = code;
    for (std::size_t i = un; i-- > 0;) {
      digits[i] = static_cast<Digit>(c % static_cast<std::uint64_t>(g));
      c /= static_cast<std::uint64_t>(g);
    }
    std::size_t lcp = 0;
    if (!first) {
      while (lcp < un && digits[lcp] == path[lcp]) ++lcp;
      for (std::size_t d = un; d > lcp; --d) close(d);
    }
    first = false;
    current = code;
    for (std::size_t d = lcp + 1; d <= un; ++d) {
      const Digit digit = digits[d - 1];
      path[d - 1] = digit;
      const auto& t = sys.transition(state[d - 1], digit);
      state[d] = t->next_state;
      scale_pow[d] = scale_pow[d - 1] * ratio_pow[static_cast<std::size_t>(state[d - 1])][digit];
      sum[d] = 0;
      witness_start[d] = result.witness.size();
    }
  }
  if (f.empty()) {
    result.value = 0;
    return result;
  }
  for (std::size_t d = un; d > 0; --d) close(d);
  result.value = close(0);

  // Exact lengths of the witness cylinders.
  const bool uniform = sys.uniform_ratio();
  std::map<std::pair<int, int>, FieldElement> cache;
  for (const auto& w : result.witness) {
    const Word word = w.generation == 0 ? Word({0}, g) : Word::from_code(w.code, w.generation, g);
    if (w.generation == 0) {
      result.exact.add(FieldElement(sys.field(), Rational(1)));
      continue;
    }
    if (uniform) {
      const int end = *walk(sys, word.digits());
      auto key = std::make_pair(w.generation, end);
      auto it = cache.find(key);
      if (it == cache.end()) it = cache.emplace(key, cylinder(f.system(), word).length()).first;
      result.exact.add(it->second);
    } else {
      result.exact.add(cylinder(f.system(), word).length());
    }
  }
  return result;
}

int default_depth_cap(const CylinderUnion& f) {
  const ExpansionSystem& sys = *f.system();
  double min_ratio = 1.0;
  double min_t = 1.0;
  for (int q = 0; q < sys.state_count(); ++q) {
    min_t = std::min(min_t, sys.image_right(q).to_real().convert_to<double>());
    for (int d = 0; d < sys.alphabet_size(); ++d) {
      const auto& t = sys.transition(q, static_cast<Digit>(d));
      if (t) min_ratio = std::min(min_ratio, t->ratio.to_real().convert_to<double>());
    }
  }
  const double bits = f.generation() * std::log2(1.0 / min_ratio) + std::log2(1.0 / min_t);
  return std::min(kMaxDyadicDepth, static_cast<int>(std::ceil(bits)) + 4);
}

DyadicMeasureResult dyadic_outer_measure(const CylinderUnion& f, const Rational& s, int depth_cap,
                                         int record_depth) {
  check_exponent(s);
  if (depth_cap < 0) depth_cap = default_depth_cap(f);
  if (depth_cap > kMaxDyadicDepth) throw InputError("depth cap exceeds 62");
  record_depth = std::clamp(record_depth, 0, depth_cap);
  const IntervalUnion runs(f);
  const Real rs = to_real(s);
  std::vector<Real> pow_of_depth(static_cast<std::size_t>(depth_cap) + 1);
  for (int d = 0; d <= depth_cap; ++d) {
    pow_of_depth[static_cast<std::size_t>(d)] = real_pow(Real(1) / pow(Real(2), d), rs);
  }

  DyadicMeasureResult result;
  result.bound.s = s;
  result.records.resize(static_cast<std::size_t>(record_depth) + 1);
  auto& witness = result.bound.witness;

  std::function<void(int, std::uint64_t)> record_full = [&](int d, std::uint64_t j) {
    if (d > record_depth) return;
    const Real& v = pow_of_depth[static_cast<std::size_t>(d)];
    result.records[static_cast<std::size_t>(d)].push_back({j, v, v});
    record_full(d + 1, 2 * j);
    record_full(d + 1, 2 * j + 1);
  };

  // Returns {lower, upper} for [j / 2^d, (j + 1) / 2^d) and runs [a, b).
  std::function<std::pair<Real, Real>(int, std::uint64_t, std::size_t, std::size_t)> rec =
      [&](int d, std::uint64_t j, std::size_t a, std::size_t b) -> std::pair<Real, Real> {
    const Real& own = pow_of_depth[static_cast<std::size_t>(d)];
    const DyadicPoint lo{j, d};
    const DyadicPoint hi{j + 1, d};
    if (b - a == 1 && runs.compare_left(a, lo) <= 0 && runs.compare_right(a, hi) >= 0) {
      witness.push_back({-d, j});
      record_full(d, j);
      return {own, own};
    }
    if (d == depth_cap) {
      ++result.partial_leaves;
      Real mass = 0;
      for (std::size_t r = a; r < b; ++r) mass += runs.overlap(r, lo, hi);
      const Real lower = std::min(own, round_down(real_pow(mass, rs)));
      witness.push_back({-d, j});
      if (d <= record_depth) result.records[static_cast<std::size_t>(d)].push_back({j, lower, own});
      return {lower, own};
    }
    const DyadicPoint mid{2 * j + 1, d + 1};
    // Runs starting left of mid, and runs ending right of mid.
    std::size_t k = a;
    std::size_t hi_k = b;
    while (k < hi_k) {
      const std::size_t m = k + (hi_k - k) / 2;
      if (runs.compare_left(m, mid) < 0) k = m + 1; else hi_k = m;
    }
    std::size_t k2 = a;
    hi_k = b;
    while (k2 < hi_k) {
      const std::size_t m = k2 + (hi_k - k2) / 2;
      if (runs.compare_right(m, mid) <= 0) k2 = m + 1; else hi_k = m;
    }
    const std::size_t mark = witness.size();
    std::pair<Real, Real> left{Real(0), Real(0)};
    std::pair<Real, Real> right{Real(0), Real(0)};
    if (k > a) left = rec(d + 1, 2 * j, a, k);
    if (b > k2) right = rec(d + 1, 2 * j + 1, k2, b);
    const Real lower = std::min(own, left.first + right.first);
    Real upper = left.second + right.second;
    if (prefer_parent(own, upper)) {
      upper = own;
      witness.resize(mark);
      witness.push_back({-d, j});
    }
    if (d <= record_depth) result.records[static_cast<std::size_t>(d)].push_back({j, lower, upper});
    return {lower, upper};
  };

  if (!runs.empty()) {
    auto [lower, upper] = rec(0, 0, 0, runs.size());
    result.bound.lower = lower;
    result.bound.upper = upper;
  } else {
    result.bound.lower = 0;
    result.bound.upper = 0;
  }
  result.bound.exact_value = result.partial_leaves == 0;
  if (result.bound.exact_value) result.bound.lower = result.bound.upper;
  const FieldPtr q = NumberField::rationals();
  for (const auto& w : witness) result.bound.exact.add(FieldElement(q, w.length()));
  for (auto& level : result.records) {
    std::sort(level.begin(), level.end(),
              [](const DyadicNodeValue& x, const DyadicNodeValue& y) { return x.index < y.index; });
  }
  return result;
}

MeasureComparison measure_comparison_check(const CylinderUnion& f, const Rational& s,
                                           int ratio_depth, int depth_cap) {
  const ExpansionSystem& sys = *f.system();
  MeasureComparison out;
  out.s = s;
  out.net = cylinder_net_measure(f, s).value;
  out.dyadic = dyadic_outer_measure(f, s, depth_cap).bound;
  const RatioConstant rc = ratio_constant(sys, ratio_depth);
  if (sys.is_beta()) {
    const FieldElement b = sys.beta_value();
    out.constant = (b * rc.constant * Rational(2)).to_real();
    out.alternative_constant = (b * rc.constant * rc.constant * Rational(2)).to_real();
  } else {
    out.constant = (rc.constant * Rational(2 * sys.alphabet_size())).to_real();
  }
  out.required = out.net / out.constant;
  out.ratio = out.net > 0 ? out.dyadic.lower / out.net : Real(1);
  out.passed = out.dyadic.lower >= out.required && out.dyadic.upper >= out.dyadic.lower;
  return out;
}

FalconerScan falconer_condition_scan(const CylinderUnion& f, const Rational& s, int max_depth,
                                     int depth_cap) {
  if (max_depth < 0) throw InputError("max_depth must be >= 0");
  if (depth_cap < 0) depth_cap = std::max(default_depth_cap(f), max_depth);
  if (max_depth > depth_cap) throw InputError("max_depth exceeds the depth cap");
  FalconerScan scan;
  scan.s = s;
  scan.max_depth = max_depth;
  const DyadicMeasureResult dy = dyadic_outer_measure(f, s, depth_cap, max_depth);
  const Real rs = to_real(s);
  bool have = false;
  std::size_t meeting = 0;
  for (int d = 0; d <= max_depth; ++d) {
    const Real size_pow = real_pow(Real(1) / pow(Real(2), d), rs);
    for (const auto& node : dy.records[static_cast<std::size_t>(d)]) {
      ++meeting;
      FalconerRow row{{-d, node.index}, node.lower, node.lower / size_pow};
      if (!have || row.ratio_lower < scan.c_min) {
        scan.c_min = row.ratio_lower;
        scan.argmin = row.interval;
        have = true;
      }
      scan.rows.push_back(std::move(row));
    }
  }
  if (!have) scan.c_min = 0;
  scan.disjoint_intervals = (std::size_t{2} << max_depth) - 1 - meeting;

  const NetMeasureResult net = cylinder_net_measure(f, s, max_depth);
  bool have_cyl = false;
  for (std::size_t j = 0; j < net.node_values.size(); ++j) {
    auto level = net.node_values[j];
    std::sort(level.begin(), level.end(),
              [](const CylinderNodeValue& x, const CylinderNodeValue& y) { return x.code < y.code; });
    for (const auto& node : level) {
      CylinderRow row{static_cast<int>(j), node.code, node.value / node.size_pow};
      if (!have_cyl || row.ratio < scan.cylinder_c_min) {
        scan.cylinder_c_min = row.ratio;
        scan.cylinder_argmin = row;
        have_cyl = true;
      }
      scan.cylinder_rows.push_back(std::move(row));
    }
  }
  if (!have_cyl) scan.cylinder_c_min = 0;
  return scan;
}

}  // namespace freqdim
