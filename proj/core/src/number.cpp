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

#include "freqdim/number.hpp"

#include <cctype>
#include <sstream>

#include "freqdim/errors.hpp"

namespace freqdim {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Integer pow10(long e) {
  Integer r = 1;
  for (long i = 0; i < e; ++i) r *= 10;
  return r;
}

// Integer's string constructor reads a leading 0 as an octal prefix.
Integer decimal_integer(std::string_view digits) {
  while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
  return Integer(std::string(digits.empty() ? std::string_view("0") : digits));
}

Rational parse_decimal(std::string_view text) {
  std::string_view mantissa = text;
  long exponent = 0;
  if (auto epos = text.find_first_of("eE"); epos != std::string_view::npos) {
    mantissa = text.substr(0, epos);
    std::string_view exp_text = text.substr(epos + 1);
    bool neg = false;
    if (!exp_text.empty() && (exp_text[0] == '+' || exp_text[0] == '-')) {
      neg = exp_text[0] == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 6) {
      throw InputError("malformed exponent in number '" + std::string(text) + "'");
    }
    exponent = std::stol(std::string(exp_text));
    if (neg) exponent = -exponent;
  }
  std::string_view int_part = mantissa;
  std::string_view frac_part;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    int_part = mantissa.substr(0, dot);
    frac_part = mantissa.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) {
    throw InputError("malformed number '" + std::string(text) + "'");
  }
  if ((!int_part.empty() && !all_digits(int_part)) ||
      (!frac_part.empty() && !all_digits(frac_part))) {
    throw InputError("malformed number '" + std::string(text) + "'");
  }
  std::string digits = std::string(int_part) + std::string(frac_part);
  const Integer numerator = decimal_integer(digits);
  long scale = static_cast<long>(frac_part.size()) - exponent;
  if (scale >= 0) return Rational(numerator, pow10(scale));
  return Rational(numerator * pow10(-scale));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  if (text.empty()) throw InputError("empty number");
  bool negative = false;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    text.remove_prefix(1);
  }
  Rational value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw InputError("malformed fraction '" + std::string(text) + "'");
    }
    const Integer d = decimal_integer(den);
    if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    value = Rational(decimal_integer(num), d);
  } else {
    value = parse_decimal(text);
  }
  return negative ? Rational(-value) : value;
}

std::string format_rational(const Rational& q) {
  const Integer num = boost::multiprecision::numerator(q);
  const Integer den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Real to_real(const Rational& q) {
  return Real(boost::multiprecision::numerator(q)) /
         Real(boost::multiprecision::denominator(q));
}

Rational dyadic_floor(const Rational& x, unsigned bits) {
  Integer scale = Integer(1) << bits;
  Integer num = boost::multiprecision::numerator(x) * scale;
  Integer den = boost::multiprecision::denominator(x);
  Integer q = num / den;
  // Truncation rounds toward zero; adjust to floor for negatives.
  if (q * den > num) q -= 1;
  return Rational(q, scale);
}

std::string format_real(const Real& x, int digits) {
  std::ostringstream out;
  out.precision(digits);
  out << x;
  return out.str();
}

Real real_pow(const Real& x, const Real& s) {
  if (x == 0) return Real(0);
  return boost::multiprecision::exp(s * boost::multiprecision::log(x));
}

}  // namespace freqdim
