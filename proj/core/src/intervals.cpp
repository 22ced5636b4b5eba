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


#include "freqdim/intervals.hpp"

#include <algorithm>

#include "freqdim/errors.hpp"

namespace freqdim {
namespace {

__extension__ typedef unsigned __int128 u128;

int sign_of_difference(u128 a, u128 b) { return a < b ? -1 : (a > b ? 1 : 0); }

// sign(code / den - q).
int compare_grid(std::uint64_t code, std::uint64_t den, const DyadicPoint& q) {
  return sign_of_difference(static_cast<u128>(code) << q.depth,
                            static_cast<u128>(q.index) * static_cast<u128>(den));
}

Rational grid_value(std::uint64_t code, std::uint64_t den) {
  return Rational(Integer(code), Integer(den));
}

}  // namespace

Rational DyadicPoint::value() const { return Rational(Integer(index), Integer(1) << depth); }

IntervalUnion::IntervalUnion(const CylinderUnion& u) : system_(u.system()) {
  const ExpansionSystem& sys = *system_;
  if (!sys.is_beta() && sys.uniform_ratio()) {
    grid_denominator_ = word_count(sys.alphabet_size(), u.generation());
    for (auto c : u.codes()) {
      if (!run_end_.empty() && run_end_.back() == c) {
        run_end_.back() = c + 1;
      } else {
        run_first_.push_back(c);
        run_end_.push_back(c + 1);
      }
    }
    return;
  }
  for (std::size_t i = 0; i < u.size(); ++i) {
    Cylinder c = u.member(i);
    if (!right_.empty() && right_.back() == c.left()) {
      right_.back() = c.right();
      run_end_.back() = i + 1;
    } else {
      left_.push_back(c.left());
      right_.push_back(c.right());
      run_first_.push_back(i);
      run_end_.push_back(i + 1);
    }
  }
}

int IntervalUnion::compare_left(std::size_t run, const DyadicPoint& q) const {
  if (uniform_grid()) return compare_grid(run_first_[run], grid_denominator_, q);
  return compare(left_[run], q.value());
}

int IntervalUnion::compare_right(std::size_t run, const DyadicPoint& q) const {
  if (uniform_grid()) return compare_grid(run_end_[run], grid_denominator_, q);
  return compare(right_[run], q.value());
}

FieldElement IntervalUnion::left(std::size_t run) const {
  if (uniform_grid()) return FieldElement(system_->field(), grid_value(run_first_[run], grid_denominator_));
  return left_[run];
}

FieldElement IntervalUnion::right(std::size_t run) const {
  if (uniform_grid()) return FieldElement(system_->field(), grid_value(run_end_[run], grid_denominator_));
  return right_[run];
}

Real IntervalUnion::overlap(std::size_t run, const DyadicPoint& a, const DyadicPoint& b) const {
  if (uniform_grid()) {
    const Rational lo = std::max(grid_value(run_first_[run], grid_denominator_), a.value());
    const Rational hi = std::min(grid_value(run_end_[run], grid_denominator_), b.value());
    return hi > lo ? to_real(hi - lo) : Real(0);
  }
  const FieldPtr& f = system_->field();
  const FieldElement fa(f, a.value());
  const FieldElement fb(f, b.value());
  const FieldElement& lo = compare(left_[run], fa) > 0 ? left_[run] : fa;
  const FieldElement& hi = compare(right_[run], fb) < 0 ? right_[run] : fb;
  FieldElement diff = hi - lo;
  if (diff.sign() <= 0) return Real(0);
  return diff.to_real();
}

Real IntervalUnion::mass() const {
  Real total = 0;
  const DyadicPoint zero{0, 0};
  const DyadicPoint one{1, 0};
  for (std::size_t r = 0; r < size(); ++r) total += overlap(r, zero, one);
  return total;
}

}  // namespace freqdim
