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

// Scalar types shared by every module: exact integers and rationals (GMP)
// and a fixed high-precision binary float (MPFR, ~166 bits) for quantities
// such as |C|^s that are not algebraic in general.

#ifndef FREQDIM_NUMBER_HPP_
#define FREQDIM_NUMBER_HPP_

#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace freqdim {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using Real = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<50>,
    boost::multiprecision::et_off>;

// Closed interval with exact endpoints.
struct RationalInterval {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / 2; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

// Parses "7", "-3/8", "0.125", "1.5e-3" exactly. Throws InputError.
Rational parse_rational(std::string_view text);

// "a/b", or "a" when the denominator is 1.
std::string format_rational(const Rational& q);

Real to_real(const Rational& q);

// Smallest rational with a power-of-two denominator no further than
// 2^-bits from x, rounded down.
Rational dyadic_floor(const Rational& x, unsigned bits);

// Decimal rendering with the given number of significant digits.
std::string format_real(const Real& x, int digits = 30);

// x^s for x > 0; 0^s is 0 for s > 0.
Real real_pow(const Real& x, const Real& s);

}  // namespace freqdim

#endif  // FREQDIM_NUMBER_HPP_
