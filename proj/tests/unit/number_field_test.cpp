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


#include <gtest/gtest.h>

#include "freqdim/errors.hpp"
#include "freqdim/field.hpp"
#include "freqdim/number.hpp"

namespace freqdim {
namespace {

FieldPtr golden_field() { return NumberField::algebraic({-1, -1, 1}, Rational(3, 2), Rational(2)); }

TEST(ParseRational, FractionsAndDecimals) {
  EXPECT_EQ(parse_rational("1/3"), Rational(1, 3));
  EXPECT_EQ(parse_rational("0.1"), Rational(1, 10));
  EXPECT_EQ(parse_rational("-2.5e-1"), Rational(-1, 4));
  EXPECT_EQ(parse_rational(" 7 "), Rational(7));
  EXPECT_EQ(parse_rational("1E3"), Rational(1000));
}

TEST(ParseRational, LeadingZerosAreDecimal) {
  EXPECT_EQ(parse_rational("0.17"), Rational(17, 100));
  EXPECT_EQ(parse_rational("0.09"), Rational(9, 100));
  EXPECT_EQ(parse_rational("010/08"), Rational(10, 8));
  EXPECT_EQ(parse_rational("0.618033988749894848"), Rational(Integer("618033988749894848"), Integer("1000000000000000000")));
}

TEST(ParseRational, RejectsMalformed) {
  EXPECT_THROW(parse_rational(""), InputError);
  EXPECT_THROW(parse_rational("1/0"), InputError);
  EXPECT_THROW(parse_rational("abc"), InputError);
  EXPECT_THROW(parse_rational("1/2/3"), InputError);
  EXPECT_THROW(parse_rational("1e"), InputError);
}

TEST(FormatRational, IntegerAndFraction) {
  EXPECT_EQ(format_rational(Rational(6, 4)), "3/2");
  EXPECT_EQ(format_rational(Rational(-2)), "-2");
}

TEST(NumberField, GoldenArithmetic) {
  const FieldPtr k = golden_field();
  const FieldElement phi = FieldElement::generator(k);
  EXPECT_TRUE(phi * phi == phi + FieldElement(k, Rational(1)));
  EXPECT_TRUE((phi * phi.inverse()) == FieldElement(k, Rational(1)));
  EXPECT_EQ(phi.sign(), 1);
  EXPECT_EQ(compare(phi, Rational(161803, 100000)), 1);
  EXPECT_EQ(compare(phi, Rational(161804, 100000)), -1);
  EXPECT_NEAR(static_cast<double>(phi.to_real()), 1.6180339887498949, 1e-15);
}

TEST(NumberField, EnclosureWidth) {
  const FieldPtr k = golden_field();
  const RationalInterval r = k->generator_enclosure(200);
  EXPECT_LE(r.width(), Rational(Integer(1), Integer(1) << 200));
  const Real mid = to_real(r.midpoint());
  EXPECT_LT(abs(mid - (1 + sqrt(Real(5))) / 2), Real(1e-45));
}

TEST(NumberField, SignOfTinyElements) {
  const FieldPtr k = golden_field();
  const FieldElement phi = FieldElement::generator(k);
  // phi^-40 is positive and about 4.4e-9.
  const FieldElement tiny = phi.pow(-40);
  EXPECT_EQ(tiny.sign(), 1);
  EXPECT_EQ((-tiny).sign(), -1);
  EXPECT_TRUE(tiny * phi.pow(40) == FieldElement(k, Rational(1)));
}

TEST(NumberField, RejectsBadIsolatingInterval) {
  EXPECT_THROW(NumberField::algebraic({-1, -1, 1}, Rational(2), Rational(3)), InputError);
  EXPECT_THROW(NumberField::algebraic({-1, -1, 1}, Rational(-1), Rational(2)), InputError);
}

TEST(NumberField, InverseOfZeroThrows) {
  const FieldPtr k = golden_field();
  EXPECT_THROW(FieldElement(k, Rational(0)).inverse(), InputError);
}

TEST(NumberField, FormatShowsErrorRadius) {
  const FieldPtr k = golden_field();
  const std::string text = FieldElement::generator(k).inverse().format(30);
  EXPECT_EQ(text.rfind("0.618033988749894848204586834", 0), 0u) << text;
  EXPECT_NE(text.find("\xC2\xB1"), std::string::npos);
  EXPECT_EQ(FieldElement(k, Rational(3, 7)).format(), "3/7");
}

TEST(NumberField, CanonicalLessIsStrictWeakOrder) {
  const FieldPtr k = golden_field();
  const FieldElement a = FieldElement::generator(k);
  const FieldElement b = FieldElement(k, Rational(2));
  CanonicalLess less;
  EXPECT_FALSE(less(a, a));
  EXPECT_NE(less(a, b), less(b, a));
}

TEST(NumberField, RationalFieldIsDegreeOne) {
  const FieldPtr q = NumberField::rationals();
  EXPECT_TRUE(q->is_rational());
  const FieldElement x(q, Rational(2, 3));
  EXPECT_TRUE(x.is_rational());
  EXPECT_EQ(x.rational_value(), Rational(2, 3));
  EXPECT_EQ(compare(x, Rational(2, 3)), 0);
}

}  // namespace
}  // namespace freqdim
