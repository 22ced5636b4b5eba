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


#include "freqdim/freqset.hpp"

#include <algorithm>
#include <functional>

#include "freqdim/errors.hpp"

namespace freqdim {
namespace {

Integer floor_rational(const Rational& x) {
  Integer num = boost::multiprecision::numerator(x);
  Integer den = boost::multiprecision::denominator(x);
  Integer q = num / den;
  if (q * den > num) q -= 1;
  return q;
}

Integer ceil_rational(const Rational& x) { return -floor_rational(-x); }

std::vector<std::uint64_t> window_counts(const FreqSetSpec& spec, std::span<const Digit> digits) {
  const int g = spec.system->alphabet_size();
  std::vector<std::uint64_t> counts(word_count(g, spec.m), 0);
  const std::size_t windows = static_cast<std::size_t>(spec.n - spec.m);
  for (std::size_t i = 0; i < windows; ++i) ++counts[window_code(digits, i, spec.m, g)];
  return counts;
}

}  // namespace

void FreqSetSpec::validate() const {
  if (!system) throw InputError("frequency set needs a system");
  if (m < 1) throw InputError("word length m must be >= 1");
  if (n <= m) throw InputError("generation n must exceed m");
  if (eps <= 0 || eps >= 1) throw InputError("eps must lie in (0, 1)");
  if (p.word_length() != m || p.alphabet_size() != system->alphabet_size()) {
    throw InputError("frequency vector does not match m and the system's alphabet");
  }
  word_count(system->alphabet_size(), n);
}

bool CountWindow::admits(std::span<const std::uint64_t> counts) const {
  for (std::size_t w = 0; w < counts.size(); ++w) {
    const auto c = static_cast<std::int64_t>(counts[w]);
    if (c < lo[w] || c > hi[w]) return false;
  }
  return true;
}

CountWindow count_window(const FreqSetSpec& spec) {
  spec.validate();
  CountWindow win;
  win.windows = static_cast<std::uint64_t>(spec.n - spec.m);
  const Rational total(static_cast<long long>(win.windows));
  const auto top = static_cast<std::int64_t>(win.windows);
  for (const auto& p : spec.p.entries()) {
    Integer lo = floor_rational((p - spec.eps) * total) + 1;
    Integer hi = ceil_rational((p + spec.eps) * total) - 1;
    win.lo.push_back(std::max<std::int64_t>(0, std::min<std::int64_t>(top + 1, lo.convert_to<std::int64_t>())));
    win.hi.push_back(std::min<std::int64_t>(top, std::max<std::int64_t>(-1, hi.convert_to<std::int64_t>())));
  }
  return win;
}

CylinderUnion::CylinderUnion(SystemPtr system, int generation, std::vector<std::uint64_t> codes)
    : system_(std::move(system)), generation_(generation), codes_(std::move(codes)) {
  if (generation_ < 1) throw InputError("generation must be >= 1");
  const std::uint64_t limit = word_count(system_->alphabet_size(), generation_);
  std::sort(codes_.begin(), codes_.end());
  codes_.erase(std::unique(codes_.begin(), codes_.end()), codes_.end());
  if (!codes_.empty() && codes_.back() >= limit) {
    throw InputError("word code out of range for the generation");
  }
  if (!system_->is_beta()) return;
  for (std::size_t i = 0; i < codes_.size(); ++i) {
    if (!is_realized(*system_, word(i).digits())) {
      throw AdmissibilityError("word " + word(i).str() + " is not admissible");
    }
  }
}

CylinderUnion CylinderUnion::all(const SystemPtr& system, int generation) {
  if (generation < 1) throw InputError("generation must be >= 1");
  const int g = system->alphabet_size();
  std::vector<std::uint64_t> codes;
  if (!system->is_beta()) {
    const std::uint64_t count = word_count(g, generation);
    if (count > kDefaultNodeBudget) throw ResourceError("too many cylinders to list", 0, 0);
    codes.resize(count);
    for (std::uint64_t c = 0; c < count; ++c) codes[c] = c;
    return CylinderUnion(system, generation, std::move(codes));
  }
  std::function<void(int, int, std::uint64_t)> rec = [&](int depth, int state, std::uint64_t code) {
    if (depth == generation) {
      if (codes.size() >= kDefaultNodeBudget) throw ResourceError("too many cylinders to list", codes.size(), codes.size());
      codes.push_back(code);
      return;
    }
    for (int d = 0; d < g; ++d) {
      const auto& t = system->transition(state, static_cast<Digit>(d));
      if (t) rec(depth + 1, t->next_state, code * static_cast<std::uint64_t>(g) + static_cast<std::uint64_t>(d));
    }
  };
  rec(0, 0, 0);
  return CylinderUnion(system, generation, std::move(codes));
}

Word CylinderUnion::word(std::size_t i) const {
  return Word::from_code(codes_[i], generation_, system_->alphabet_size());
}

Cylinder CylinderUnion::member(std::size_t i) const { return cylinder(system_, word(i)); }

bool CylinderUnion::contains(std::uint64_t code) const {
  return std::binary_search(codes_.begin(), codes_.end(), code);
}

FieldElement CylinderUnion::total_length() const {
  FieldElement total(system_->field(), Rational(0));
  for (std::size_t i = 0; i < codes_.size(); ++i) total += member(i).length();
  return total;
}

CylinderUnion build_freqset(const FreqSetSpec& spec, std::size_t budget) {
  const CountWindow win = count_window(spec);
  const ExpansionSystem& sys = *spec.system;
  const int g = sys.alphabet_size();
  const int n = spec.n;
  const int m = spec.m;
  const auto total_windows = static_cast<std::int64_t>(win.windows);
  const std::uint64_t block = word_count(g, m);

  std::vector<std::uint64_t> members;
  for (std::size_t w = 0; w < win.lo.size(); ++w) {
    if (win.lo[w] > win.hi[w]) return CylinderUnion(spec.system, n, {});
  }
  std::vector<std::int64_t> counts(block, 0);
  // Windows still owed to words below their lower bound.
  std::int64_t deficit = 0;
  for (auto lo : win.lo) deficit += lo;
  if (deficit > total_windows) return CylinderUnion(spec.system, n, {});

  std::size_t nodes = 0;
  std::function<void(int, int, std::uint64_t)> rec = [&](int depth, int state, std::uint64_t code) {
    if (depth == n) {
      members.push_back(code);
      return;
    }
    for (int d = 0; d < g; ++d) {
      const auto& t = sys.transition(state, static_cast<Digit>(d));
      if (!t) continue;
      if (++nodes > budget) {
        throw ResourceError("frequency-set enumeration exceeded " + std::to_string(budget) + " nodes",
                            nodes, members.size());
      }
      const std::uint64_t next = code * static_cast<std::uint64_t>(g) + static_cast<std::uint64_t>(d);
      // The window starting at depth + 1 - m ends with this digit.
      const std::int64_t start = depth + 1 - m;
      std::uint64_t wc = 0;
      bool counted = false;
      if (start >= 0 && start < total_windows) {
        wc = next % block;
        if (counts[wc] + 1 > win.hi[wc]) continue;
        counted = true;
        if (++counts[wc] <= win.lo[wc]) --deficit;
      }
      const std::int64_t done = std::clamp<std::int64_t>(start + 1, 0, total_windows);
      if (deficit <= total_windows - done) rec(depth + 1, t->next_state, next);
      if (counted) {
        if (counts[wc]-- <= win.lo[wc]) ++deficit;
      }
    }
  };
  rec(0, 0, 0);
  return CylinderUnion(spec.system, n, std::move(members));
}

CylinderUnion build_freqset_naive(const FreqSetSpec& spec) {
  const CountWindow win = count_window(spec);
  const CylinderUnion everything = CylinderUnion::all(spec.system, spec.n);
  std::vector<std::uint64_t> members;
  for (std::size_t i = 0; i < everything.size(); ++i) {
    const Word w = everything.word(i);
    if (win.admits(window_counts(spec, w.digits()))) members.push_back(everything.codes()[i]);
  }
  return CylinderUnion(spec.system, spec.n, std::move(members));
}

bool in_freqset(const FreqSetSpec& spec, const Word& word) {
  const CountWindow win = count_window(spec);
  if (word.length() != spec.n) throw InputError("word length must equal the generation n");
  if (!is_realized(*spec.system, word.digits())) {
    throw AdmissibilityError("word " + word.str() + " is not admissible");
  }
  return win.admits(window_counts(spec, word.digits()));
}

bool in_freqset(const FreqSetSpec& spec, const FieldElement& x) {
  DigitSequence digits = expand(*spec.system, x, static_cast<std::size_t>(spec.n));
  return in_freqset(spec, Word(std::move(digits), spec.system->alphabet_size()));
}

Restriction union_restrict(const CylinderUnion& u, const FieldElement& lo, const FieldElement& hi) {
  Restriction out;
  if (compare(lo, hi) >= 0 || u.empty()) return out;
  // First member whose right end exceeds lo.
  std::size_t a = 0;
  std::size_t b = u.size();
  while (a < b) {
    const std::size_t mid = a + (b - a) / 2;
    if (compare(u.member(mid).right(), lo) <= 0) a = mid + 1; else b = mid;
  }
  const std::size_t first = a;
  // First member whose left end is at or past hi.
  b = u.size();
  while (a < b) {
    const std::size_t mid = a + (b - a) / 2;
    if (compare(u.member(mid).left(), hi) < 0) a = mid + 1; else b = mid;
  }
  const std::size_t last = a;
  for (std::size_t i = first; i < last; ++i) {
    const bool edge = i == first || i + 1 == last;
    if (!edge) {
      out.inside.push_back(i);
      continue;
    }
    const Cylinder c = u.member(i);
    const bool left_in = compare(c.left(), lo) >= 0;
    const bool right_in = compare(c.right(), hi) <= 0;
    if (left_in && right_in) {
      out.inside.push_back(i);
    } else {
      out.clipped.push_back({i, left_in ? c.left() : lo, right_in ? c.right() : hi});
    }
  }
  return out;
}

Restriction union_restrict(const CylinderUnion& u, const Rational& lo, const Rational& hi) {
  const FieldPtr& f = u.system()->field();
  return union_restrict(u, FieldElement(f, lo), FieldElement(f, hi));
}

}  // namespace freqdim
