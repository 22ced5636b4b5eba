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

#include "freqdim/field.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "freqdim/errors.hpp"

namespace freqdim {
namespace {

using boost::multiprecision::abs;
using boost::multiprecision::denominator;
using boost::multiprecision::msb;
using boost::multiprecision::numerator;

RationalInterval interval_mul(const RationalInterval& a, const RationalInterval& b) {
  Rational p1 = a.lo * b.lo;
  Rational p2 = a.lo * b.hi;
  Rational p3 = a.hi * b.lo;
  Rational p4 = a.hi * b.hi;
  return {std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4})};
}

// Horner evaluation over an enclosure of the argument.
RationalInterval horner(std::span<const Rational> coeffs, const RationalInterval& x) {
  RationalInterval acc{coeffs.back(), coeffs.back()};
  for (std::size_t i = coeffs.size() - 1; i-- > 0;) {
    acc = interval_mul(acc, x);
    acc.lo += coeffs[i];
    acc.hi += coeffs[i];
  }
  return acc;
}

int rational_sign(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

// Rough log2 magnitude of a nonzero rational; used only to pick precisions.
long log2_magnitude(const Rational& q) {
  if (q == 0) return -100000;
  Integer num = abs(numerator(q));
  Integer den = denominator(q);
  return static_cast<long>(msb(num)) - static_cast<long>(msb(den));
}

Rational pow2(long e) {
  if (e >= 0) return Rational(Integer(1) << static_cast<unsigned>(e));
  return Rational(Integer(1), Integer(1) << static_cast<unsigned>(-e));
}

}  // namespace

// ---------------------------------------------------------------------------
// NumberField

NumberField::NumberField(std::vector<Rational> poly, Rational lo, Rational hi)
    : poly_(std::move(poly)), sign_at_lo_(0), lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_ != hi_) sign_at_lo_ = rational_sign(evaluate(lo_));
}

FieldPtr NumberField::rationals() {
  static const FieldPtr kRationals(
      new NumberField({Rational(0), Rational(1)}, Rational(0), Rational(0)));
  return kRationals;
}

FieldPtr NumberField::algebraic(std::vector<Rational> poly, const Rational& lo,
                                const Rational& hi) {
  while (!poly.empty() && poly.back() == 0) poly.pop_back();
  if (poly.size() < 2) throw InputError("defining polynomial must have degree >= 1");
  if (!(lo < hi)) throw InputError("isolating interval must satisfy lo < hi");
  const Rational lead = poly.back();
  for (auto& c : poly) c /= lead;

  auto eval = [&](const Rational& x) {
    Rational acc = poly.back();
    for (std::size_t i = poly.size() - 1; i-- > 0;) acc = acc * x + poly[i];
    return acc;
  };
  const int s_lo = rational_sign(eval(lo));
  const int s_hi = rational_sign(eval(hi));
  if (s_lo == 0 || s_hi == 0 || s_lo == s_hi) {
    throw InputError("defining polynomial does not change sign on the isolating interval");
  }

  // P' must keep one sign on [lo, hi]; check on a subdivision.
  std::vector<Rational> derivative;
  for (std::size_t i = 1; i < poly.size(); ++i) derivative.push_back(poly[i] * Rational(i));
  constexpr int kPieces = 256;
  int seen = 0;
  for (int k = 0; k < kPieces; ++k) {
    RationalInterval piece{lo + (hi - lo) * Rational(k, kPieces),
                           lo + (hi - lo) * Rational(k + 1, kPieces)};
    RationalInterval d = horner(derivative, piece);
    int s = d.lo > 0 ? 1 : (d.hi < 0 ? -1 : 0);
    if (s == 0 || (seen != 0 && s != seen)) {
      throw InputError("isolating interval is too wide: derivative may vanish inside it");
    }
    seen = s;
  }
  return FieldPtr(new NumberField(std::move(poly), lo, hi));
}

Rational NumberField::evaluate(const Rational& x) const {
  Rational acc = poly_.back();
  for (std::size_t i = poly_.size() - 1; i-- > 0;) acc = acc * x + poly_[i];
  return acc;
}

RationalInterval NumberField::generator_enclosure(unsigned bits) const {
  std::lock_guard<std::mutex> lock(mu_);
  const Rational target = pow2(-static_cast<long>(bits));
  while (hi_ - lo_ > target) {
    Rational mid = (lo_ + hi_) / 2;
    int s = rational_sign(evaluate(mid));
    if (s == 0) {
      lo_ = mid;
      hi_ = mid;
    } else if (s == sign_at_lo_) {
      lo_ = std::move(mid);
    } else {
      hi_ = std::move(mid);
    }
  }
  return {lo_, hi_};
}

// ---------------------------------------------------------------------------
// FieldElement

FieldElement::FieldElement(FieldPtr field, const Rational& value)
    : field_(std::move(field)) {
  coeffs_.assign(static_cast<std::size_t>(field_->degree()), Rational(0));
  coeffs_[0] = value;
}

FieldElement::FieldElement(FieldPtr field, std::vector<Rational> coefficients)
    : field_(std::move(field)), coeffs_(std::move(coefficients)) {
  const auto d = static_cast<std::size_t>(field_->degree());
  if (coeffs_.size() > d) {
    // Reduce an over-long polynomial modulo P.
    const auto& p = field_->polynomial();
    for (std::size_t k = coeffs_.size(); k-- > d;) {
      const Rational c = coeffs_[k];
      if (c == 0) continue;
      for (std::size_t i = 0; i < d; ++i) coeffs_[k - d + i] -= c * p[i];
      coeffs_[k] = 0;
    }
  }
  coeffs_.resize(d, Rational(0));
}

FieldElement FieldElement::generator(const FieldPtr& field) {
  return FieldElement(field, std::vector<Rational>{Rational(0), Rational(1)});
}

bool FieldElement::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
}

bool FieldElement::is_rational() const {
  return std::all_of(coeffs_.begin() + 1, coeffs_.end(),
                     [](const Rational& c) { return c == 0; });
}

const Rational& FieldElement::rational_value() const {
  if (!is_rational()) throw InputError("field element is not rational");
  return coeffs_[0];
}

void FieldElement::check_same_field(const FieldElement& other) const {
  if (field_ != other.field_) throw InputError("field elements belong to different fields");
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& other) {
  check_same_field(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& other) {
  check_same_field(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& other) {
  check_same_field(other);
  const std::size_t d = coeffs_.size();
  if (d == 1) {
    coeffs_[0] *= other.coeffs_[0];
    return *this;
  }
  std::vector<Rational> product(2 * d - 1, Rational(0));
  for (std::size_t i = 0; i < d; ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (other.coeffs_[j] == 0) continue;
      product[i + j] += coeffs_[i] * other.coeffs_[j];
    }
  }
  *this = FieldElement(field_, std::move(product));
  return *this;
}

FieldElement& FieldElement::operator*=(const Rational& q) {
  for (auto& c : coeffs_) c *= q;
  return *this;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw InputError("inverse of zero");
  const std::size_t d = coeffs_.size();
  if (d == 1) return FieldElement(field_, Rational(1) / coeffs_[0]);

  // Column j of the multiplication matrix is this * theta^j.
  std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d + 1, Rational(0)));
  FieldElement column = *this;
  const FieldElement theta = generator(field_);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < d; ++i) m[i][j] = column.coeffs_[i];
    column *= theta;
  }
  m[0][d] = 1;
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t pivot = col;
    while (pivot < d && m[pivot][col] == 0) ++pivot;
    if (pivot == d) {
      throw InputError("element is a zero divisor: the defining polynomial is reducible");
    }
    std::swap(m[pivot], m[col]);
    const Rational inv = Rational(1) / m[col][col];
    for (auto& x : m[col]) x *= inv;
    for (std::size_t r = 0; r < d; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const Rational f = m[r][col];
      for (std::size_t c = col; c <= d; ++c) m[r][c] -= f * m[col][c];
    }
  }
  std::vector<Rational> solution(d);
  for (std::size_t i = 0; i < d; ++i) solution[i] = m[i][d];
  return FieldElement(field_, std::move(solution));
}

FieldElement FieldElement::pow(int exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  FieldElement result(field_, Rational(1));
  FieldElement base = *this;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    exponent >>= 1;
    if (exponent > 0) base *= base;
  }
  return result;
}

RationalInterval FieldElement::enclose(unsigned bits) const {
  if (is_rational()) return {coeffs_[0], coeffs_[0]};
  const Rational target = pow2(-static_cast<long>(bits));
  // Interval width is about sum_i |c_i| i |theta|^(i-1) times the generator
  // width; start with a guess for that factor and widen if it falls short.
  long magnitude = 0;
  for (const auto& c : coeffs_) magnitude = std::max(magnitude, log2_magnitude(c));
  long extra = std::max<long>(8, magnitude + 2 * static_cast<long>(coeffs_.size()) + 8);
  for (;;) {
    const RationalInterval theta =
        field_->generator_enclosure(bits + static_cast<unsigned>(extra));
    RationalInterval value = horner(coeffs_, theta);
    if (value.width() <= target) return value;
    extra += 32;
  }
}

int FieldElement::sign() const {
  if (is_rational()) return rational_sign(coeffs_[0]);
  for (unsigned bits = 64; bits <= kMaxSignBits; bits *= 2) {
    const RationalInterval r = enclose(bits);
    if (r.lo > 0) return 1;
    if (r.hi < 0) return -1;
  }
  throw PrecisionError("sign undecided: element vanishes at the generator but not in the ring");
}

Real FieldElement::to_real() const {
  if (is_rational()) return freqdim::to_real(coeffs_[0]);
  return freqdim::to_real(enclose(200).midpoint());
}

std::string FieldElement::format(int digits) const {
  if (is_rational()) return format_rational(coeffs_[0]);
  const auto bits = static_cast<unsigned>(std::ceil(digits * 3.33)) + 16;
  const RationalInterval r = enclose(bits);
  const std::string printed = format_real(freqdim::to_real(r.midpoint()), digits);
  const Rational shown = parse_rational(printed);
  const Rational error = std::max(abs(shown - r.lo), abs(r.hi - shown));
  // Smallest power of ten (from a short list of candidates) bounding the error.
  int k = digits + 8;
  Rational bound(Integer(1), boost::multiprecision::pow(Integer(10), static_cast<unsigned>(k)));
  while (bound < error && k > 0) {
    --k;
    bound *= 10;
  }
  return printed + "\xC2\xB1" + "1e-" + std::to_string(k);
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  a.check_same_field(b);
  return a.coeffs_ == b.coeffs_;
}

int compare(const FieldElement& a, const FieldElement& b) {
  a.check_same_field(b);
  if (a.is_rational() && b.is_rational()) {
    return a.coeffs_[0] < b.coeffs_[0] ? -1 : (b.coeffs_[0] < a.coeffs_[0] ? 1 : 0);
  }
  return (a - b).sign();
}

int compare(const FieldElement& a, const Rational& b) {
  if (a.is_rational()) {
    return a.coeffs_[0] < b ? -1 : (b < a.coeffs_[0] ? 1 : 0);
  }
  FieldElement diff = a;
  diff.coeffs_[0] -= b;
  return diff.sign();
}

bool CanonicalLess::operator()(const FieldElement& a, const FieldElement& b) const {
  auto ca = a.coefficients();
  auto cb = b.coefficients();
  if (ca.size() != cb.size()) return ca.size() < cb.size();
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (ca[i] != cb[i]) return ca[i] < cb[i];
  }
  return false;
}

}  // namespace freqdim
