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

// Exact arithmetic in Q(theta) for a real algebraic theta.
//
// theta is described by a monic rational polynomial P and an isolating
// interval containing exactly one simple root. Elements are stored as
// coefficient vectors in the power basis 1, theta, ..., theta^(D-1) and
// reduced modulo P after every multiplication. Real-valued questions (sign,
// comparison, numeric value) are answered by refining the isolating
// interval and evaluating with exact rational interval arithmetic, so every
// decision is certified. The rational field is the degree-1 case.
//
// If P is reducible over Q, ring equality is stronger than equality of real
// values; sign() then reports PrecisionError instead of looping forever on an
// element that vanishes at theta without being zero in the ring.

#ifndef FREQDIM_FIELD_HPP_
#define FREQDIM_FIELD_HPP_

#include <cstddef>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "freqdim/number.hpp"

namespace freqdim {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

class NumberField {
 public:
  // The field Q (degree 1, generator 0).
  static FieldPtr rationals();

  // Q(theta) for the unique root theta of `poly` in [lo, hi]. `poly` holds
  // coefficients in ascending degree order and is normalized to be monic.
  // Throws InputError unless P changes sign on [lo, hi] and P' provably has
  // no zero there.
  static FieldPtr algebraic(std::vector<Rational> poly, const Rational& lo,
                            const Rational& hi);

  int degree() const { return static_cast<int>(poly_.size()) - 1; }
  bool is_rational() const { return degree() == 1; }

  // Monic, ascending coefficients.
  const std::vector<Rational>& polynomial() const { return poly_; }

  // Interval of width at most 2^-bits containing theta.
  RationalInterval generator_enclosure(unsigned bits) const;

  NumberField(const NumberField&) = delete;
  NumberField& operator=(const NumberField&) = delete;

 private:
  NumberField(std::vector<Rational> poly, Rational lo, Rational hi);

  Rational evaluate(const Rational& x) const;

  std::vector<Rational> poly_;
  int sign_at_lo_;
  mutable std::mutex mu_;
  mutable Rational lo_;
  mutable Rational hi_;
};

class FieldElement {
 public:
  FieldElement(FieldPtr field, const Rational& value);
  FieldElement(FieldPtr field, std::vector<Rational> coefficients);

  static FieldElement generator(const FieldPtr& field);

  const FieldPtr& field() const { return field_; }
  std::span<const Rational> coefficients() const { return coeffs_; }

  bool is_zero() const;
  // True when the element lies in Q (all higher coefficients vanish).
  bool is_rational() const;
  // Requires is_rational().
  const Rational& rational_value() const;

  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& other);
  FieldElement& operator-=(const FieldElement& other);
  FieldElement& operator*=(const FieldElement& other);
  FieldElement& operator*=(const Rational& q);

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator*(FieldElement a, const Rational& q) { return a *= q; }
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    return a * b.inverse();
  }

  // Throws InputError for the zero element.
  FieldElement inverse() const;
  FieldElement pow(int exponent) const;

  // Exact sign of the real value. Throws PrecisionError past the cap.
  int sign() const;

  // Interval of width at most 2^-bits containing the value.
  RationalInterval enclose(unsigned bits) const;

  // Value rounded to the working precision of Real.
  Real to_real() const;

  // Exact fraction for rational elements, otherwise decimal digits followed
  // by a certified error radius, e.g. "0.618033988749894848204586834366±1e-31".
  std::string format(int digits = 30) const;

  // Ring equality (exact).
  friend bool operator==(const FieldElement& a, const FieldElement& b);

  // Numeric three-way comparison (exact sign of a - b).
  friend int compare(const FieldElement& a, const FieldElement& b);
  friend int compare(const FieldElement& a, const Rational& b);

  friend bool operator<(const FieldElement& a, const FieldElement& b) { return compare(a, b) < 0; }
  friend bool operator<=(const FieldElement& a, const FieldElement& b) { return compare(a, b) <= 0; }
  friend bool operator>(const FieldElement& a, const FieldElement& b) { return compare(a, b) > 0; }
  friend bool operator>=(const FieldElement& a, const FieldElement& b) { return compare(a, b) >= 0; }

 private:
  void check_same_field(const FieldElement& other) const;

  FieldPtr field_;
  std::vector<Rational> coeffs_;
};

// Strict weak ordering on coefficient vectors; used for canonical map keys,
// unrelated to the numeric order.
struct CanonicalLess {
  bool operator()(const FieldElement& a, const FieldElement& b) const;
};

// Precision ceiling used by sign(); bits of absolute enclosure width.
inline constexpr unsigned kMaxSignBits = 1u << 14;

}  // namespace freqdim

#endif  // FREQDIM_FIELD_HPP_
