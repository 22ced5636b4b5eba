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


#include "freqdim/manifest.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <set>

#include "freqdim/csv.hpp"
#include "freqdim/dimension.hpp"
#include "freqdim/errors.hpp"
#include "freqdim/json_util.hpp"
#include "freqdim/netmeasure.hpp"
#include "freqdim/parallel.hpp"

namespace freqdim {
namespace {

using nlohmann::json;

struct Context {
  const json& manifest;
  const json& params;
  std::mt19937_64 rng;
  SystemPtr system;
};

struct OpResult {
  json result;
  std::optional<std::string> csv;
  bool passed = true;
};

std::string jreal(const Real& x) { return format_real(x, 30); }

SystemPtr need_system(Context& ctx) {
  if (!ctx.system) {
    const json& spec = json_member(ctx.manifest, "system", "");
    ctx.system = system_from_json(spec, "/system");
  }
  return ctx.system;
}

const json* optional_param(const Context& ctx, const std::string& key) {
  auto it = ctx.params.find(key);
  return it == ctx.params.end() ? nullptr : &*it;
}

int param_int(const Context& ctx, const std::string& key, std::optional<int> fallback = {}) {
  if (!ctx.params.contains(key) && fallback) return *fallback;
  return json_int(ctx.params, key, "/parameters");
}

Rational param_rational(const Context& ctx, const std::string& key,
                        std::optional<Rational> fallback = {}) {
  if (!ctx.params.contains(key) && fallback) return *fallback;
  return json_rational(ctx.params, key, "/parameters");
}

std::string param_string(const Context& ctx, const std::string& key,
                         std::optional<std::string> fallback = {}) {
  if (!ctx.params.contains(key) && fallback) return *fallback;
  return json_string(ctx.params, key, "/parameters");
}

std::vector<Rational> rational_list(const json& v, const std::string& pointer) {
  std::vector<Rational> out;
  if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(json_rational(v[i], pointer + "/" + std::to_string(i)));
  } else if (v.is_object()) {
    const Rational from = json_rational(v, "from", pointer);
    const Rational to = json_rational(v, "to", pointer);
    const Rational step = json_rational(v, "step", pointer);
    if (step <= 0) throw InputError(pointer + "/step: must be positive");
    for (Rational x = from; x <= to; x += step) out.push_back(x);
  } else {
    out.push_back(json_rational(v, pointer));
  }
  return out;
}

std::vector<int> int_list(const json& v, const std::string& pointer) {
  if (!v.is_array()) throw InputError(pointer + ": expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_integer()) throw InputError(pointer + "/" + std::to_string(i) + ": expected an integer");
    out.push_back(v[i].get<int>());
  }
  return out;
}

FrequencyVector parse_frequency(const json& v, int m, int g, const std::string& pointer) {
  try {
    if (v.is_string()) return FrequencyVector::parse(v.get<std::string>(), m, g);
    if (v.is_array()) {
      std::string text;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) text += ",";
        text += v[i].is_string() ? v[i].get<std::string>() : v[i].dump();
      }
      return FrequencyVector::parse(text, m, g);
    }
  } catch (const InputError& e) {
    throw InputError(pointer + ": " + e.what());
  }
  throw InputError(pointer + ": expected a frequency list");
}

FreqSetSpec freqset_spec(Context& ctx) {
  SystemPtr sys = need_system(ctx);
  const int m = param_int(ctx, "m", 1);
  FreqSetSpec spec{sys, m,
                   parse_frequency(json_member(ctx.params, "p", "/parameters"), m, sys->alphabet_size(), "/parameters/p"),
                   param_int(ctx, "n"), param_rational(ctx, "eps")};
  try {
    spec.validate();
  } catch (const InputError& e) {
    throw InputError(std::string("/parameters: ") + e.what());
  }
  return spec;
}

std::size_t budget(const Context& ctx) {
  if (const json* b = optional_param(ctx, "budget")) {
    if (!b->is_number_unsigned()) throw InputError("/parameters/budget: expected a positive integer");
    return b->get<std::size_t>();
  }
  return kDefaultNodeBudget;
}

Word param_word(Context& ctx, const std::string& key) {
  return Word::parse(param_string(ctx, key), need_system(ctx)->alphabet_size());
}

std::string digits_string(std::span<const Digit> digits, int g) {
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (g > 10) {
      if (i > 0) out += ',';
      out += std::to_string(digits[i]);
    } else {
      out += static_cast<char>('0' + digits[i]);
    }
  }
  return out;
}

json cover_json(const NetMeasureResult& r, int g) {
  json cover = json::array();
  for (const auto& w : r.witness) {
    cover.push_back(w.generation == 0 ? std::string("") : code_string(w.code, w.generation, g));
  }
  return cover;
}

// An explicit member list ("words") or the frequency set of the parameters.
CylinderUnion union_from_params(Context& ctx) {
  if (const json* list = optional_param(ctx, "words")) {
    SystemPtr sys = need_system(ctx);
    if (!list->is_array() || list->empty()) throw InputError("/parameters/words: expected a non-empty array");
    std::vector<std::uint64_t> codes;
    int generation = -1;
    for (std::size_t i = 0; i < list->size(); ++i) {
      const std::string ptr = "/parameters/words/" + std::to_string(i);
      if (!(*list)[i].is_string()) throw InputError(ptr + ": expected a string");
      Word w = [&] {
        try {
          return Word::parse((*list)[i].get<std::string>(), sys->alphabet_size());
        } catch (const InputError& e) {
          throw InputError(ptr + ": " + e.what());
        }
      }();
      if (generation < 0) generation = w.length();
      if (w.length() != generation) throw InputError(ptr + ": all words must have the same length");
      codes.push_back(w.code());
    }
    return CylinderUnion(sys, generation, std::move(codes));
  }
  return build_freqset(freqset_spec(ctx), budget(ctx));
}

OpResult op_expand(Context& ctx) {
  SystemPtr sys = need_system(ctx);
  const Rational x = param_rational(ctx, "x");
  const int n = param_int(ctx, "n");
  if (n < 1) throw InputError("/parameters/n: must be >= 1");
  const DigitSequence d = expand(*sys, x, static_cast<std::size_t>(n));
  return {{{"x", format_rational(x)}, {"digits", digits_string(d, sys->alphabet_size())}}, {}, true};
}

OpResult op_synthesize(Context& ctx) {
  SystemPtr sys = need_system(ctx);
  const Word w = param_word(ctx, "digits");
  const FieldElement v = synthesize(*sys, w.digits());
  return {{{"digits", w.str()}, {"value", format_exact(v)}}, {}, true};
}

OpResult op_beta_one(Context& ctx) {
  const json& spec = json_member(ctx.manifest, "system", "");
  const int max_k = param_int(ctx, "max_k", 64);
  BetaOneExpansion one;
  if (spec.contains("value")) {
    const json& v = spec["value"];
    const std::string text = v.is_string() ? v.get<std::string>() : v.dump();
    const int bits = spec.contains("precision_bits") ? json_int(spec, "precision_bits", "/system") : 128;
    if (bits < 8) throw InputError("/system/precision_bits: must be >= 8");
    try {
      one = beta_expansion_of_one(beta_value_enclosure(text, static_cast<unsigned>(bits)), max_k);
    } catch (const InputError& e) {
      throw InputError(std::string("/system/value: ") + e.what());
    }
  } else {
    SystemPtr sys;
    try {
      sys = need_system(ctx);
    } catch (const NonTerminatingError&) {
      const auto& poly = json_member(spec, "polynomial", "/system");
      const auto& iso = json_member(spec, "isolating", "/system");
      std::vector<Rational> coeffs;
      for (std::size_t i = 0; i < poly.size(); ++i) coeffs.push_back(json_rational(poly[i], "/system/polynomial/" + std::to_string(i)));
      one = beta_expansion_of_one(NumberField::algebraic(coeffs, json_rational(iso[0], "/system/isolating/0"),
                                                         json_rational(iso[1], "/system/isolating/1")), max_k);
    }
    if (sys) one = beta_expansion_of_one(sys->field(), max_k);
  }
  return {{{"digits", digits_string(one.digits, 2)}, {"terminated", one.terminated}, {"k", one.digits.size()}},
          {}, true};
}

OpResult op_admissible(Context& ctx) {
  SystemPtr sys = need_system(ctx);
  const Word w = param_word(ctx, "word");
  json forb = json::array();
  for (const auto& f : sys->forbidden()) forb.push_back(f.str());
  return {{{"word", w.str()}, {"admissible", is_admissible(*sys, w.digits())},
           {"realized", is_realized(*sys, w.digits())}, {"forbidden", forb}},
          {}, true};
}

OpResult op_cylinder(Context& ctx) {
  SystemPtr sys = need_system(ctx);
  const Word w = param_word(ctx, "word");
  const Cylinder c = cylinder(sys, w);
  json out{{"word", w.str()}, {"left", format_exact(c.left())}, {"right", format_exact(c.right())},
           {"length", format_exact(c.length())}, {"full", is_full_cylinder(*sys, w)}};
  if (sys->is_beta()) {
    const Word full = full_completion(*sys, w);
    out["full_completion"] = full.str();
    out["full_completion_length"] = format_exact(cylinder(sys, full).length());
  }
  return {out, {}, true};
}

OpResult op_ratio(Context& ctx) {
  SystemPtr sys = need_system(ctx);
  const RatioConstant rc = ratio_constant(*sys, param_int(ctx, "depth", 12));
  json out{{"min_ratio", format_exact(rc.min_ratio)},
           {"argmin_parent", digits_string(rc.argmin_parent, sys->alphabet_size())},
           {"argmin_digit", rc.argmin_digit},
           {"cylinders", rc.cylinders_enumerated},
           {"constant", format_exact(rc.constant)},
           {"constant_name", sys->is_beta() ? "C_beta" : "K"},
           {"bound_satisfied", rc.bound_satisfied}};
  return {out, {}, rc.bound_satisfied};
}

OpResult op_freqset(Context& ctx) {
  const FreqSetSpec spec = freqset_spec(ctx);
  const CylinderUnion u = build_freqset(spec, budget(ctx));
  CsvTable table({"word", "left", "right", "length"});
  const bool with_csv = ctx.manifest.contains("outputs") && ctx.manifest["outputs"].contains("csv");
  if (with_csv) {
    for (std::size_t i = 0; i < u.size(); ++i) {
      const Cylinder c = u.member(i);
      table.add_row({c.word().str(), format_exact(c.left()), format_exact(c.right()), format_exact(c.length())});
    }
  }
  const CountWindow win = count_window(spec);
  return {{{"members", u.size()}, {"generation", spec.n}, {"windows", win.windows},
           {"count_lo", win.lo}, {"count_hi", win.hi}},
          with_csv ? std::optional<std::string>(table.str()) : std::nullopt,
          true};
}

OpResult op_measure(Context& ctx) {
  const CylinderUnion u = union_from_params(ctx);
  const Rational s = param_rational(ctx, "s");
  const std::string mode = param_string(ctx, "mode", std::string("cylinder"));
  json out{{"members", u.size()}, {"s", format_rational(s)}, {"mode", mode}};
  if (mode == "cylinder") {
    const NetMeasureResult r = cylinder_net_measure(u, s);
    out["value"] = jreal(r.value);
    out["cover_size"] = r.witness.size();
    out["cover"] = cover_json(r, u.system()->alphabet_size());
  } else if (mode == "dyadic") {
    const DyadicMeasureResult r = dyadic_outer_measure(u, s, param_int(ctx, "depth", -1));
    out["lower"] = jreal(r.bound.lower);
    out["upper"] = jreal(r.bound.upper);
    out["exact"] = r.bound.exact_value;
    out["partial_leaves"] = r.partial_leaves;
    out["cover_size"] = r.bound.witness.size();
  } else {
    throw InputError("/parameters/mode: expected \"cylinder\" or \"dyadic\"");
  }
  return {out, {}, true};
}

OpResult op_scan(Context& ctx) {
  const CylinderUnion u = union_from_params(ctx);
  const Rational s = param_rational(ctx, "s");
  const FalconerScan scan = falconer_condition_scan(u, s, param_int(ctx, "max_depth", 6), param_int(ctx, "depth_cap", -1));
  CsvTable table({"scale", "index", "ratio_lower"});
  for (const auto& row : scan.rows) {
    table.add_row({std::to_string(row.interval.scale), std::to_string(row.interval.index), jreal(row.ratio_lower)});
  }
  const int g = u.system()->alphabet_size();
  json out{{"members", u.size()},
           {"s", format_rational(s)},
           {"c_min", jreal(scan.c_min)},
           {"argmin", {{"scale", scan.argmin.scale}, {"index", scan.argmin.index}}},
           {"intervals_meeting", scan.rows.size()},
           {"intervals_disjoint", scan.disjoint_intervals},
           {"cylinder_c_min", jreal(scan.cylinder_c_min)},
           {"cylinder_argmin", scan.cylinder_argmin.generation == 0
                                   ? std::string("")
                                   : code_string(scan.cylinder_argmin.code, scan.cylinder_argmin.generation, g)}};
  return {out, table.str(), scan.c_min > 0};
}

OpResult op_random_unions(Context& ctx) {
  SystemPtr sys = need_system(ctx);
  const int n_min = param_int(ctx, "n_min", 1);
  const int n_max = param_int(ctx, "n_max");
  const int count = param_int(ctx, "count");
  if (n_min < 1 || n_max < n_min || count < 0) throw InputError("/parameters: invalid union schedule");
  const std::vector<Rational> exps = rational_list(json_member(ctx.params, "s", "/parameters"), "/parameters/s");
  std::set<std::string> checks;
  if (const json* c = optional_param(ctx, "checks")) {
    for (const auto& v : *c) checks.insert(v.get<std::string>());
  } else {
    checks = {"net"};
  }
  const int ratio_depth = param_int(ctx, "ratio_depth", 12);
  const int g = sys->alphabet_size();
  const int depth = param_int(ctx, "depth", -1);
  std::vector<CylinderUnion> drawn;
  for (int i = 0; i < count; ++i) {
    const int n = n_min + static_cast<int>(ctx.rng() % static_cast<std::uint64_t>(n_max - n_min + 1));
    drawn.push_back(random_union(sys, n, ctx.rng));
  }
  std::vector<json> slots(drawn.size());
  std::vector<std::size_t> failures(drawn.size(), 0);
  parallel_for(drawn.size(), [&](std::size_t i) {
    const CylinderUnion& u = drawn[i];
    json entry{{"n", u.generation()}, {"members", u.size()}};
    json words = json::array();
    for (auto c : u.codes()) words.push_back(code_string(c, u.generation(), g));
    entry["words"] = words;
    json values = json::array();
    for (const auto& s : exps) {
      json v{{"s", format_rational(s)}};
      const NetMeasureResult net = cylinder_net_measure(u, s);
      v["net"] = jreal(net.value);
      if (checks.count("dyadic")) {
        const DyadicMeasureResult dy = dyadic_outer_measure(u, s, depth);
        v["dyadic_lower"] = jreal(dy.bound.lower);
        v["dyadic_upper"] = jreal(dy.bound.upper);
        v["dyadic_exact"] = dy.bound.exact_value;
        const std::optional<bool> eq =
            dy.bound.exact_value ? exactly_equal(dy.bound.exact, net.exact, s) : std::nullopt;
        v["equal"] = eq.has_value() && *eq;
        v["decided_exactly"] = eq.has_value();
        if (!(eq.has_value() && *eq)) ++failures[i];
      }
      if (checks.count("compare")) {
        const MeasureComparison mc = measure_comparison_check(u, s, ratio_depth, depth);
        v["dyadic_lower"] = jreal(mc.dyadic.lower);
        v["constant"] = jreal(mc.constant);
        if (mc.alternative_constant) v["alternative_constant"] = jreal(*mc.alternative_constant);
        v["required"] = jreal(mc.required);
        v["comparison_passed"] = mc.passed;
        if (!mc.passed) ++failures[i];
      }
      values.push_back(v);
    }
    entry["values"] = values;
    slots[i] = std::move(entry);
  });
  json unions = json::array();
  std::size_t violations = 0;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    unions.push_back(std::move(slots[i]));
    violations += failures[i];
  }
  const bool passed = violations == 0;
  return {{{"unions", unions}, {"violations", violations}}, {}, passed};
}

OpResult op_parry(Context& ctx) {
  SystemPtr sys = need_system(ctx);
  if (!sys->is_beta()) throw InputError("/system: parry check needs a beta system");
  const int samples = param_int(ctx, "samples", 1000);
  const int length = param_int(ctx, "length", 64);
  const int synth_length = param_int(ctx, "synth_length", 48);
  const std::size_t k = sys->expansion_of_one().size();
  std::set<std::uint64_t> forbidden;
  json forb = json::array();
  for (const auto& w : sys->forbidden()) {
    forbidden.insert(w.code());
    forb.push_back(w.str());
  }
  std::size_t factor_violations = 0;
  Real worst = 0;
  for (int i = 0; i < samples; ++i) {
    const Rational x(Integer(ctx.rng() >> 11), Integer(1) << 53);
    const DigitSequence d = expand(*sys, x, static_cast<std::size_t>(length));
    for (std::size_t j = 0; j + k <= d.size(); ++j) {
      if (forbidden.count(window_code(d, j, static_cast<int>(k), 2))) {
        ++factor_violations;
        break;
      }
    }
    const FieldElement y = synthesize(*sys, std::span<const Digit>(d.data(), static_cast<std::size_t>(synth_length)));
    worst = std::max(worst, Real(abs((y - FieldElement(sys->field(), x)).to_real())));
  }
  const bool ok = factor_violations == 0 && worst <= Real(1e-10);
  return {{{"forbidden", forb},
           {"expansion_of_one", digits_string(sys->expansion_of_one(), 2)},
           {"samples", samples},
           {"factor_violations", factor_violations},
           {"max_synthesis_error", jreal(worst)}},
          {},
          ok};
}

OpResult op_q_constant(Context& ctx) {
  SystemPtr sys = need_system(ctx);
  if (!sys->is_beta()) throw InputError("/system: q_constant needs a beta system");
  const std::vector<Rational> exps = rational_list(json_member(ctx.params, "s", "/parameters"), "/parameters/s");
  json values = json::array();
  for (const auto& s : exps) {
    const QConstant q = q_constant(s, sys->beta_value());
    json v{{"s", format_rational(s)}, {"value", jreal(q.value)}};
    if (q.exact) v["exact"] = format_exact(*q.exact);
    values.push_back(v);
  }
  return {{{"values", values}}, {}, true};
}

OpResult op_oracle(Context& ctx) {
  SystemPtr sys = need_system(ctx);
  const int m = param_int(ctx, "m", 1);
  const FrequencyVector p = parse_frequency(json_member(ctx.params, "p", "/parameters"), m, sys->alphabet_size(), "/parameters/p");
  const DimensionOracleResult r = entropy_dimension_oracle(*sys, p);
  json out{{"formula", r.formula_id}, {"residual", jreal(r.consistency_residual)}};
  if (r.s_star) out["s_star"] = jreal(*r.s_star); else out["unavailable"] = r.reason;
  return {out, {}, true};
}

OpResult op_freqset_measure(Context& ctx) {
  SystemPtr sys = need_system(ctx);
  const int m = param_int(ctx, "m", 1);
  const FrequencyVector p = parse_frequency(json_member(ctx.params, "p", "/parameters"), m, sys->alphabet_size(), "/parameters/p");
  const Rational eps = param_rational(ctx, "eps");
  const Rational s = param_rational(ctx, "s");
  const std::vector<int> schedule = int_list(json_member(ctx.params, "n_schedule", "/parameters"), "/parameters/n_schedule");
  std::vector<Real> values(schedule.size());
  parallel_for(schedule.size(), [&](std::size_t i) {
    FreqSetSpec spec{sys, m, p, schedule[i], eps};
    try {
      spec.validate();
    } catch (const InputError& e) {
      throw InputError("/parameters/n_schedule/" + std::to_string(i) + ": " + e.what());
    }
    values[i] = FreqSetMeasure(spec, s).total();
  });
  CsvTable table({"n", "value"});
  json rows = json::array();
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    rows.push_back({{"n", schedule[i]}, {"value", jreal(values[i])}});
    table.add_row({std::to_string(schedule[i]), jreal(values[i])});
  }
  return {{{"s", format_rational(s)}, {"eps", format_rational(eps)}, {"threshold", jreal(critical_threshold(*sys, s))},
           {"values", rows}},
          table.str(),
          true};
}

OpResult op_estimate(Context& ctx) {
  SystemPtr sys = need_system(ctx);
  const int m = param_int(ctx, "m", 1);
  const FrequencyVector p = parse_frequency(json_member(ctx.params, "p", "/parameters"), m, sys->alphabet_size(), "/parameters/p");
  const std::vector<int> schedule = int_list(json_member(ctx.params, "n_schedule", "/parameters"), "/parameters/n_schedule");
  const std::vector<Rational> grid = rational_list(json_member(ctx.params, "s_grid", "/parameters"), "/parameters/s_grid");
  const CriticalExponentEstimate est = estimate_critical_exponent(sys, m, p, param_rational(ctx, "eps"), schedule, grid);
  CsvTable table({"s", "n", "value", "threshold", "classification"});
  json rows = json::array();
  for (const auto& row : est.rows) {
    json vals = json::array();
    for (std::size_t j = 0; j < row.values.size(); ++j) {
      vals.push_back(jreal(row.values[j]));
      table.add_row({format_rational(row.s), std::to_string(schedule[j]), jreal(row.values[j]), jreal(row.threshold),
                     row.classification});
    }
    rows.push_back({{"s", format_rational(row.s)}, {"threshold", jreal(row.threshold)}, {"values", vals},
                    {"classification", row.classification}});
  }
  const DimensionOracleResult oracle = entropy_dimension_oracle(*sys, p);
  json out{{"s_lo", format_rational(est.s_lo)}, {"s_hi", format_rational(est.s_hi)},
           {"threshold", est.threshold_id}, {"rows", rows}, {"diagnostics", est.diagnostics},
           {"monotone_in_s", est.monotone_in_s}};
  if (oracle.s_star) out["oracle"] = jreal(*oracle.s_star);
  return {out, table.str(), est.monotone_in_s};
}

OpResult op_scaling(Context& ctx) {
  const FreqSetSpec spec = freqset_spec(ctx);
  const Rational s = param_rational(ctx, "s");
  std::vector<Word> words;
  const json& list = json_member(ctx.params, "cylinders", "/parameters");
  for (const auto& w : list) words.push_back(Word::parse(w.get<std::string>(), spec.system->alphabet_size()));
  const ScalingReport r = cylinder_scaling_check(spec, s, words);
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"cylinder", row.cylinder.str()}, {"value", jreal(row.value)}, {"size_pow", jreal(row.size_pow)},
                    {"ratio", jreal(row.ratio)}, {"passed", row.passed}});
  }
  return {{{"bound", jreal(r.bound)}, {"bound_id", r.bound_id}, {"rows", rows}}, {}, r.passed};
}

OpResult op_witness(Context& ctx) {
  SystemPtr sys = need_system(ctx);
  const int m = param_int(ctx, "m", 1);
  const int g = sys->alphabet_size();
  std::vector<FrequencyVector> targets;
  const json& list = json_member(ctx.params, "targets", "/parameters");
  if (!list.is_array()) throw InputError("/parameters/targets: expected an array");
  for (std::size_t i = 0; i < list.size(); ++i) {
    targets.push_back(parse_frequency(list[i], m, g, "/parameters/targets/" + std::to_string(i)));
  }
  WitnessOptions opt;
  opt.first_block = static_cast<std::size_t>(param_int(ctx, "first_block", 16));
  opt.growth = static_cast<std::size_t>(param_int(ctx, "growth", 16));
  opt.grid_checkpoints = static_cast<std::size_t>(param_int(ctx, "grid_checkpoints", 256));
  opt.cluster_radius = param_rational(ctx, "cluster_radius", Rational(1, 20));
  const auto horizon = static_cast<std::size_t>(param_int(ctx, "horizon"));
  const Rational visit_radius = param_rational(ctx, "visit_radius", Rational(1, 50));
  const int min_visits = param_int(ctx, "min_visits", 1);
  const OscillationWitness w = oscillation_witness(sys, m, targets, horizon, opt);
  json visits = json::array();
  bool ok = true;
  for (const auto& t : targets) {
    const std::size_t v = w.report.visits_near(t, visit_radius);
    visits.push_back(v);
    ok = ok && v >= static_cast<std::size_t>(min_visits);
  }
  std::size_t factor_hits = 0;
  if (sys->is_beta()) {
    const int k = static_cast<int>(sys->expansion_of_one().size());
    std::set<std::uint64_t> forbidden;
    for (const auto& f : sys->forbidden()) forbidden.insert(f.code());
    for (std::size_t j = 0; j + static_cast<std::size_t>(k) <= w.digits.size(); ++j) {
      if (forbidden.count(window_code(w.digits, j, k, 2))) ++factor_hits;
    }
    ok = ok && factor_hits == 0;
  }
  json blocks = json::array();
  for (const auto& b : w.blocks) {
    blocks.push_back({{"start", b.start}, {"length", b.length}, {"target", b.target},
                      {"deviation", b.deviation}, {"slack", b.slack}});
  }
  CsvTable table({"n", "frequencies"});
  for (std::size_t i = 0; i < w.report.checkpoints.size(); ++i) {
    std::string freq;
    for (const auto& e : w.report.trajectory[i].entries()) {
      if (!freq.empty()) freq += ";";
      freq += format_rational(e);
    }
    table.add_row({std::to_string(w.report.checkpoints[i]), freq});
  }
  json out{{"horizon", horizon}, {"visits", visits}, {"visit_radius", format_rational(visit_radius)},
           {"forbidden_factor_hits", factor_hits}, {"blocks", blocks}, {"accumulation", w.report.to_json()}};
  return {out, table.str(), ok};
}

OpResult op_intersect(Context& ctx) {
  const json& list = json_member(ctx.params, "specs", "/parameters");
  if (!list.is_array() || list.empty()) throw InputError("/parameters/specs: expected a non-empty array");
  std::vector<IntersectionSpec> specs;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string ptr = "/parameters/specs/" + std::to_string(i);
    const json& item = list[i];
    SystemPtr sys = system_from_json(json_member(item, "system", ptr), ptr + "/system");
    const int m = item.contains("m") ? json_int(item, "m", ptr) : 1;
    specs.push_back({sys, m, parse_frequency(json_member(item, "p", ptr), m, sys->alphabet_size(), ptr + "/p"),
                     json_rational(item, "eps", ptr), json_int(item, "n", ptr)});
  }
  const IntersectionReport r = intersection_experiment(specs, param_rational(ctx, "s_margin", Rational(1, 10)),
                                                       param_int(ctx, "depth", 6), budget(ctx));
  json entries = json::array();
  for (const auto& e : r.entries) {
    json item{{"members", e.members}, {"c_min", jreal(e.c_min)}, {"cylinder_c_min", jreal(e.cylinder_c_min)},
              {"passed", e.passed}, {"formula", e.oracle.formula_id}};
    if (e.oracle.s_star) item["oracle"] = jreal(*e.oracle.s_star);
    if (e.estimator_s) item["estimator_s"] = format_rational(*e.estimator_s);
    entries.push_back(item);
  }
  return {{{"degenerate", r.degenerate}, {"s", format_rational(r.s)}, {"s_margin", format_rational(r.s_margin)},
           {"depth", r.depth}, {"entries", entries}, {"notes", r.notes}},
          {},
          r.passed};
}

const std::map<std::string, std::function<OpResult(Context&)>>& registry() {
  static const std::map<std::string, std::function<OpResult(Context&)>> ops = {
      {"expand", op_expand},         {"synthesize", op_synthesize}, {"beta-one", op_beta_one},
      {"admissible", op_admissible}, {"cylinder", op_cylinder},     {"ratio", op_ratio},
      {"freqset", op_freqset},       {"measure", op_measure},       {"scan", op_scan},
      {"random-unions", op_random_unions}, {"parry", op_parry},     {"q_constant", op_q_constant},
      {"oracle", op_oracle},         {"freqset-measure", op_freqset_measure},         {"estimate", op_estimate},     {"scaling", op_scaling},
      {"witness", op_witness},       {"intersect", op_intersect}};
  return ops;
}

void write_file(const std::filesystem::path& path, const std::string& data) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << data;
}

}  // namespace

const std::vector<std::string>& manifest_operations() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : registry()) v.push_back(name);
    return v;
  }();
  return names;
}

std::string render_report(const json& report) { return report.dump(2) + "\n"; }

CylinderUnion random_union(const SystemPtr& system, int n, std::mt19937_64& rng) {
  const CylinderUnion all = CylinderUnion::all(system, n);
  std::vector<std::uint64_t> picked;
  std::uint64_t bits = 0;
  int left = 0;
  for (auto c : all.codes()) {
    if (left == 0) {
      bits = rng();
      left = 64;
    }
    if (bits & 1) picked.push_back(c);
    bits >>= 1;
    --left;
  }
  if (picked.empty()) picked.push_back(all.codes()[rng() % all.size()]);
  return CylinderUnion(system, n, std::move(picked));
}

ManifestOutcome run_manifest(const json& manifest, const std::filesystem::path& base_dir, bool write_outputs) {
  ManifestOutcome out;
  out.report = json::object();
  static const json kEmpty = json::object();
  try {
    if (!manifest.is_object()) throw InputError(": manifest must be a JSON object");
    if (manifest.contains("version") && (!manifest["version"].is_number_integer() || manifest["version"].get<int>() != 1)) {
      throw InputError("/version: only version 1 is supported");
    }
    const std::string op = json_string(manifest, "operation", "");
    auto it = registry().find(op);
    if (it == registry().end()) throw InputError("/operation: unknown operation '" + op + "'");
    std::uint64_t seed = 0;
    if (manifest.contains("seed")) {
      if (!manifest["seed"].is_number_unsigned()) throw InputError("/seed: expected a non-negative integer");
      seed = manifest["seed"].get<std::uint64_t>();
    }
    const json& params = manifest.contains("parameters") ? manifest["parameters"] : kEmpty;
    if (!params.is_object()) throw InputError("/parameters: expected an object");
    Context ctx{manifest, params, std::mt19937_64(seed), nullptr};
    OpResult r = it->second(ctx);
    out.report = {{"version", 1}, {"operation", op}, {"seed", seed}, {"result", std::move(r.result)},
                  {"passed", r.passed}};
    if (ctx.system) out.report["system"] = ctx.system->to_json();
    out.csv = std::move(r.csv);
    out.exit_code = r.passed ? kExitOk : kExitViolation;
    if (write_outputs && manifest.contains("outputs")) {
      const json& outputs = manifest["outputs"];
      if (outputs.contains("report")) {
        write_file(base_dir / json_string(outputs, "report", "/outputs"), render_report(out.report));
      }
      if (outputs.contains("csv") && out.csv) {
        write_file(base_dir / json_string(outputs, "csv", "/outputs"), *out.csv);
      }
    }
  } catch (const ResourceError& e) {
    out.exit_code = kExitResource;
    out.error = e.what();
    out.report = {{"error", e.what()}, {"partial", true}, {"explored", e.explored()}, {"found", e.partial()}};
  } catch (const InputError& e) {
    out.exit_code = kExitUsage;
    out.error = e.what();
    out.report = {{"error", e.what()}};
  } catch (const json::exception& e) {
    out.exit_code = kExitUsage;
    out.error = std::string("malformed manifest: ") + e.what();
    out.report = {{"error", out.error}};
  } catch (const AdmissibilityError& e) {
    out.exit_code = kExitUsage;
    out.error = e.what();
    out.report = {{"error", e.what()}};
  } catch (const PrecisionError& e) {
    out.exit_code = kExitUsage;
    out.error = e.what();
    out.report = {{"error", e.what()}};
  } catch (const NonTerminatingError& e) {
    out.exit_code = kExitUsage;
    out.error = e.what();
    out.report = {{"error", e.what()}};
  } catch (const Error& e) {
    out.exit_code = kExitViolation;
    out.error = e.what();
    out.report = {{"error", e.what()}};
  }
  return out;
}

}  // namespace freqdim
