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

#include "freqdim/system.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "freqdim/errors.hpp"

namespace freqdim {
namespace {

using boost::multiprecision::abs;

RationalInterval interval_mul(const RationalInterval& a, const RationalInterval& b) {
  Rational p1 = a.lo * b.lo;
  Rational p2 = a.lo * b.hi;
  Rational p3 = a.hi * b.lo;
  Rational p4 = a.hi * b.hi;
  return {std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4})};
}

// Outward rounding to a dyadic grid keeps interval endpoints small.
RationalInterval round_outward(const RationalInterval& r, unsigned bits) {
  Rational lo = dyadic_floor(r.lo, bits);
  Rational hi = -dyadic_floor(-r.hi, bits);
  return {lo, hi};
}

// Polynomial x^k - j_0 x^(k-1) - ... - j_(k-1), ascending coefficients.
std::vector<Rational> one_expansion_polynomial(std::span<const Digit> digits) {
  const std::size_t k = digits.size();
  std::vector<Rational> poly(k + 1, Rational(0));
  poly[k] = 1;
  for (std::size_t i = 0; i < k; ++i) poly[k - 1 - i] = -Rational(digits[i]);
  return poly;
}

}  // namespace

// ---------------------------------------------------------------------------
// Construction

SystemPtr ExpansionSystem::linear(std::vector<Rational> branch_lengths) {
  if (branch_lengths.size() < 2) throw InputError("a full-branch map needs at least 2 branches");
  if (branch_lengths.size() > 255) throw InputError("at most 255 branches are supported");
  Rational total = 0;
  for (const auto& l : branch_lengths) {
    if (l <= 0) throw InputError("branch lengths must be positive");
    total += l;
  }
  if (total != 1) throw InputError("branch lengths must sum to 1 (got " + format_rational(total) + ")");

  std::shared_ptr<ExpansionSystem> sys(new ExpansionSystem());
  sys->kind_ = SystemKind::kLinear;
  sys->alphabet_size_ = static_cast<int>(branch_lengths.size());
  sys->field_ = NumberField::rationals();
  sys->image_right_.emplace_back(sys->field_, Rational(1));
  sys->transitions_.resize(1);
  Rational offset = 0;
  for (const auto& l : branch_lengths) {
    sys->transitions_[0].push_back(Transition{0, FieldElement(sys->field_, offset),
                                              FieldElement(sys->field_, l),
                                              FieldElement(sys->field_, Rational(1) / l)});
    offset += l;
  }
  sys->uniform_ratio_ = std::all_of(branch_lengths.begin(), branch_lengths.end(),
                                    [&](const Rational& l) { return l == branch_lengths[0]; });
  sys->branch_lengths_ = std::move(branch_lengths);
  return sys;
}

SystemPtr ExpansionSystem::base(int g) {
  if (g < 2) throw InputError("base must be >= 2");
  return linear(std::vector<Rational>(static_cast<std::size_t>(g), Rational(1, g)));
}

SystemPtr ExpansionSystem::beta(const FieldPtr& field, int max_k) {
  BetaOneExpansion one = beta_expansion_of_one(field, max_k);
  if (!one.terminated) {
    throw NonTerminatingError("d(1, beta) does not terminate within " + std::to_string(max_k) +
                              " digits");
  }
  std::shared_ptr<ExpansionSystem> sys(new ExpansionSystem());
  sys->kind_ = SystemKind::kBeta;
  sys->alphabet_size_ = 2;
  sys->field_ = field;
  sys->uniform_ratio_ = true;
  const FieldElement b = FieldElement::generator(field);
  const FieldElement b_inv = b.inverse();
  const FieldElement one_elt(field, Rational(1));

  // Forward image tracking: state t means the image [0, t).
  sys->image_right_.push_back(one_elt);
  for (std::size_t q = 0; q < sys->image_right_.size(); ++q) {
    std::vector<std::optional<Transition>> row(2);
    const FieldElement bt = b * sys->image_right_[q];
    for (Digit d = 0; d < 2; ++d) {
      if (compare(bt, Rational(d)) <= 0) continue;
      FieldElement next = bt - FieldElement(field, Rational(d));
      if (compare(next, Rational(1)) >= 0) next = one_elt;
      std::size_t idx = 0;
      while (idx < sys->image_right_.size() && !(sys->image_right_[idx] == next)) ++idx;
      if (idx == sys->image_right_.size()) {
        if (sys->image_right_.size() > static_cast<std::size_t>(max_k) + 1) {
          throw NonTerminatingError("image tracking produced more states than the digit budget");
        }
        sys->image_right_.push_back(next);
      }
      row[d] = Transition{static_cast<int>(idx), b_inv * Rational(d), b_inv, b};
    }
    sys->transitions_.push_back(std::move(row));
  }
  sys->expansion_of_one_ = one.digits;
  sys->forbidden_ = forbidden_words(one.digits);
  return sys;
}

RationalInterval beta_value_enclosure(std::string_view value, unsigned precision_bits) {
  const Rational v = parse_rational(value);
  Rational radius = Rational(Integer(1), Integer(1) << precision_bits);
  if (auto dot = value.find('.'); dot != std::string_view::npos) {
    std::size_t decimals = 0;
    for (std::size_t i = dot + 1; i < value.size() && std::isdigit(static_cast<unsigned char>(value[i])); ++i) {
      ++decimals;
    }
    const Rational half_unit(Integer(1), 2 * boost::multiprecision::pow(Integer(10), static_cast<unsigned>(decimals)));
    radius = std::max(radius, half_unit);
  }
  return {v - radius, v + radius};
}

SystemPtr ExpansionSystem::beta_from_value(std::string_view value, unsigned precision_bits,
                                           int max_k) {
  const RationalInterval enclosure = beta_value_enclosure(value, precision_bits);
  if (enclosure.lo <= 1 || enclosure.hi >= 2) throw InputError("beta must lie in (1, 2)");
  BetaOneExpansion one = beta_expansion_of_one(enclosure, max_k);
  if (!one.terminated) {
    throw NonTerminatingError("d(1, beta) does not terminate within " + std::to_string(max_k) +
                              " digits");
  }
  FieldPtr field =
      NumberField::algebraic(one_expansion_polynomial(one.digits), enclosure.lo, enclosure.hi);
  return beta(field, max_k);
}

SystemPtr ExpansionSystem::golden() {
  static const SystemPtr kGolden = beta(NumberField::algebraic(
      {Rational(-1), Rational(-1), Rational(1)}, Rational(3, 2), Rational(2)));
  return kGolden;
}

SystemPtr ExpansionSystem::tribonacci() {
  static const SystemPtr kTribonacci = beta(NumberField::algebraic(
      {Rational(-1), Rational(-1), Rational(-1), Rational(1)}, Rational(9, 5), Rational(19, 10)));
  return kTribonacci;
}

FieldElement ExpansionSystem::beta_value() const {
  if (!is_beta()) throw InputError("not a beta system");
  return FieldElement::generator(field_);
}

std::string ExpansionSystem::description() const {
  if (!is_beta()) {
    if (uniform_ratio_) return "base-" + std::to_string(alphabet_size_);
    std::string out = "linear(";
    for (std::size_t i = 0; i < branch_lengths_.size(); ++i) {
      if (i > 0) out += ",";
      out += format_rational(branch_lengths_[i]);
    }
    return out + ")";
  }
  std::string d1;
  for (Digit d : expansion_of_one_) d1 += static_cast<char>('0' + d);
  return "beta(" + beta_value().format(12) + ", d1=" + d1 + ")";
}

nlohmann::json ExpansionSystem::to_json() const {
  nlohmann::json out;
  if (!is_beta()) {
    out["type"] = "linear";
    std::vector<std::string> br;
    for (const auto& l : branch_lengths_) br.push_back(format_rational(l));
    out["branches"] = br;
    return out;
  }
  out["type"] = "beta";
  std::vector<std::string> poly;
  for (const auto& c : field_->polynomial()) poly.push_back(format_rational(c));
  out["polynomial"] = poly;
  const RationalInterval iso = field_->generator_enclosure(64);
  out["isolating"] = {format_rational(iso.lo), format_rational(iso.hi)};
  std::string d1;
  for (Digit d : expansion_of_one_) d1 += static_cast<char>('0' + d);
  out["expansion_of_one"] = d1;
  return out;
}

// ---------------------------------------------------------------------------
// Expansion of 1

BetaOneExpansion beta_expansion_of_one(const FieldPtr& field, int max_k) {
  if (max_k < 1) throw InputError("max_k must be >= 1");
  if (field->is_rational()) throw InputError("beta must be given as an algebraic generator");
  const FieldElement b = FieldElement::generator(field);
  if (compare(b, Rational(1)) <= 0 || compare(b, Rational(2)) >= 0) {
    throw InputError("beta must lie in (1, 2)");
  }
  BetaOneExpansion result;
  FieldElement y(field, Rational(1));
  for (int i = 0; i < max_k; ++i) {
    FieldElement z = b * y;
    const Digit d = compare(z, Rational(1)) >= 0 ? 1 : 0;
    result.digits.push_back(d);
    y = z - FieldElement(field, Rational(d));
    if (y.is_zero()) {
      result.terminated = true;
      return result;
    }
  }
  return result;
}

BetaOneExpansion beta_expansion_of_one(const RationalInterval& beta, int max_k) {
  if (max_k < 1) throw InputError("max_k must be >= 1");
  if (beta.lo <= 1 || beta.hi >= 2) throw InputError("beta must lie in (1, 2)");
  constexpr unsigned kMaxWorkingBits = 4096;
  for (unsigned bits = 64;; bits *= 2) {
    BetaOneExpansion result;
    RationalInterval y{Rational(1), Rational(1)};
    bool ambiguous = false;
    std::size_t failing = 0;
    for (int i = 0; i < max_k; ++i) {
      const RationalInterval z = round_outward(interval_mul(beta, y), bits);
      if (z.lo <= 1 && 1 <= z.hi) {
        // The orbit may hit 0 exactly here; confirm with exact arithmetic.
        std::vector<Digit> candidate = result.digits;
        candidate.push_back(1);
        try {
          FieldPtr field =
              NumberField::algebraic(one_expansion_polynomial(candidate), beta.lo, beta.hi);
          BetaOneExpansion exact = beta_expansion_of_one(field, max_k);
          if (exact.terminated && exact.digits == candidate) return exact;
        } catch (const InputError&) {
          // No isolated root of the candidate polynomial inside the enclosure.
        }
      }
      const Rational center = z.midpoint();
      const Rational radius = z.width() / 2;
      Digit d;
      if (center - 1 >= 4 * radius) {
        d = 1;
      } else if (1 - center >= 4 * radius) {
        d = 0;
      } else {
        ambiguous = true;
        failing = static_cast<std::size_t>(i);
        break;
      }
      result.digits.push_back(d);
      y = {z.lo - d, z.hi - d};
    }
    if (!ambiguous) return result;
    if (bits >= kMaxWorkingBits) {
      throw PrecisionError("digit of d(1, beta) undecidable at the given precision of beta",
                           failing);
    }
  }
}

std::vector<Word> forbidden_words(std::span<const Digit> d1) {
  if (d1.empty() || d1.size() > 20) throw InputError("expansion of 1 must have 1..20 digits");
  for (Digit d : d1) {
    if (d > 1) throw InputError("expansion of 1 must be binary");
  }
  const int k = static_cast<int>(d1.size());
  const Word reference(std::vector<Digit>(d1.begin(), d1.end()), 2);
  std::vector<Word> out;
  for (std::uint64_t c = reference.code(); c < word_count(2, k); ++c) {
    out.push_back(Word::from_code(c, k, 2));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Digits and cylinders

std::optional<int> walk(const ExpansionSystem& system, std::span<const Digit> digits) {
  int state = 0;
  for (Digit d : digits) {
    if (d >= system.alphabet_size()) return std::nullopt;
    const auto& t = system.transition(state, d);
    if (!t) return std::nullopt;
    state = t->next_state;
  }
  return state;
}

bool is_realized(const ExpansionSystem& system, std::span<const Digit> digits) {
  return walk(system, digits).has_value();
}

bool is_admissible(const ExpansionSystem& system, std::span<const Digit> digits) {
  for (Digit d : digits) {
    if (d >= system.alphabet_size()) return false;
  }
  if (!system.is_beta()) return true;
  const std::size_t k = system.expansion_of_one().size();
  std::vector<Digit> padded(digits.begin(), digits.end());
  padded.insert(padded.end(), k - 1, 0);
  if (padded.size() < k) return true;
  std::set<std::uint64_t> forbidden;
  for (const auto& w : system.forbidden()) forbidden.insert(w.code());
  for (std::size_t i = 0; i + k <= padded.size(); ++i) {
    if (forbidden.count(window_code(padded, i, static_cast<int>(k), 2))) return false;
  }
  return true;
}

DigitSequence expand(const ExpansionSystem& system, const FieldElement& x, std::size_t n) {
  if (n < 1) throw InputError("expand needs n >= 1");
  if (x.field() != system.field()) throw InputError("point and system use different fields");
  std::size_t index = 0;
  try {
    if (x.sign() < 0 || compare(x, Rational(1)) >= 0) throw InputError("x must lie in [0, 1)");
    DigitSequence out;
    out.reserve(n);
    int state = 0;
    FieldElement y = x;
    for (index = 0; index < n; ++index) {
      // Sub-intervals tile [0, t) in increasing digit order: the digit is the
      // largest allowed one whose offset does not exceed y.
      std::optional<Digit> chosen;
      for (int d = system.alphabet_size() - 1; d >= 0; --d) {
        const auto& t = system.transition(state, static_cast<Digit>(d));
        if (!t) continue;
        if (compare(y, t->offset) >= 0) {
          chosen = static_cast<Digit>(d);
          break;
        }
      }
      if (!chosen) throw InputError("point left the image interval");
      const auto& t = *system.transition(state, *chosen);
      y = (y - t.offset) * t.slope;
      state = t.next_state;
      out.push_back(*chosen);
    }
    return out;
  } catch (const PrecisionError& e) {
    throw PrecisionError(std::string("digit decision failed: ") + e.what(), index);
  }
}

DigitSequence expand(const ExpansionSystem& system, const Rational& x, std::size_t n) {
  return expand(system, FieldElement(system.field(), x), n);
}

FieldElement synthesize(const ExpansionSystem& system, std::span<const Digit> digits) {
  FieldElement left(system.field(), Rational(0));
  FieldElement scale(system.field(), Rational(1));
  int state = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    const Digit d = digits[i];
    if (d >= system.alphabet_size() || !system.transition(state, d)) {
      throw AdmissibilityError("digit " + std::to_string(d) + " at position " + std::to_string(i) +
                               " is not admissible");
    }
    const auto& t = *system.transition(state, d);
    left += scale * t.offset;
    scale *= t.ratio;
    state = t.next_state;
  }
  return left;
}

Cylinder cylinder(const SystemPtr& system, const Word& word) {
  if (word.alphabet_size() != system->alphabet_size()) {
    throw InputError("word alphabet does not match the system");
  }
  FieldElement left(system->field(), Rational(0));
  FieldElement scale(system->field(), Rational(1));
  int state = 0;
  for (int i = 0; i < word.length(); ++i) {
    const auto& t = system->transition(state, word[i]);
    if (!t) {
      throw AdmissibilityError("empty cylinder: word " + word.str() + " is not admissible");
    }
    left += scale * t->offset;
    scale *= t->ratio;
    state = t->next_state;
  }
  FieldElement right = left + scale * system->image_right(state);
  return Cylinder(system, word, std::move(left), std::move(right), state);
}

bool is_full_cylinder(const ExpansionSystem& system, const Word& word) {
  auto state = walk(system, word.digits());
  if (!state) throw AdmissibilityError("word " + word.str() + " is not admissible");
  return *state == 0;
}

Word full_completion(const ExpansionSystem& system, const Word& word) {
  auto state = walk(system, word.digits());
  if (!state) throw AdmissibilityError("word " + word.str() + " is not admissible");
  std::vector<Digit> digits(word.digits().begin(), word.digits().end());
  auto only_zero = [&](int q) {
    for (int d = 1; d < system.alphabet_size(); ++d) {
      if (system.transition(q, static_cast<Digit>(d))) return false;
    }
    return true;
  };
  int q = *state;
  // While 0 is the only continuation, appending it leaves the cylinder as is.
  while (only_zero(q)) {
    digits.push_back(0);
    q = system.transition(q, 0)->next_state;
  }
  digits.push_back(0);
  q = system.transition(q, 0)->next_state;
  if (q != 0) throw Error("internal: completion did not reach a full cylinder");
  return Word(std::move(digits), word.alphabet_size());
}

RatioConstant ratio_constant(const ExpansionSystem& system, int depth, std::size_t budget) {
  if (depth < 1) throw InputError("depth must be >= 1");
  const auto& field = system.field();
  std::map<std::pair<int, int>, FieldElement> ratio_cache;
  auto ratio_of = [&](int q, Digit d) -> const FieldElement& {
    auto key = std::make_pair(q, static_cast<int>(d));
    auto it = ratio_cache.find(key);
    if (it == ratio_cache.end()) {
      const auto& t = *system.transition(q, d);
      FieldElement r = t.ratio * system.image_right(t.next_state) * system.image_right(q).inverse();
      it = ratio_cache.emplace(key, std::move(r)).first;
    }
    return it->second;
  };

  std::optional<FieldElement> best;
  std::vector<Digit> best_parent;
  Digit best_digit = 0;
  std::size_t enumerated = 0;
  std::vector<Digit> word;
  std::set<std::pair<int, int>> seen;

  // Iterative DFS; each frame is (state, next digit to try).
  std::vector<std::pair<int, int>> stack{{0, 0}};
  while (!stack.empty()) {
    auto& [q, next] = stack.back();
    if (static_cast<int>(word.size()) >= depth || next >= system.alphabet_size()) {
      stack.pop_back();
      if (!word.empty()) word.pop_back();
      continue;
    }
    const Digit d = static_cast<Digit>(next++);
    const auto& t = system.transition(q, d);
    if (!t) continue;
    if (++enumerated > budget) {
      throw ResourceError("ratio_constant: cylinder budget exceeded", enumerated, enumerated);
    }
    if (seen.insert({q, d}).second) {
      const FieldElement& r = ratio_of(q, d);
      if (!best || compare(r, *best) < 0) {
        best = r;
        best_parent = word;
        best_digit = d;
      }
    }
    const int child = t->next_state;
    word.push_back(d);
    stack.emplace_back(child, 0);
  }

  const FieldElement r = *best;
  const Integer g(system.alphabet_size());
  if (system.is_beta()) {
    FieldElement c = (system.beta_value() * r).inverse();
    return RatioConstant{r, best_parent, best_digit, enumerated, std::move(c), true};
  }
  FieldElement inv_gr = (r * Rational(g)).inverse();
  FieldElement k(field, system.distortion());
  if (compare(inv_gr, k) > 0) k = inv_gr;
  const bool ok = compare(r * Rational(g) * system.distortion(), Rational(1)) >= 0;
  return RatioConstant{r, best_parent, best_digit, enumerated, std::move(k), ok};
}

}  // namespace freqdim
