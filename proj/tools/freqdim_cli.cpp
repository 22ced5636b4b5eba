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


#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "freqdim/csv.hpp"
#include "freqdim/errors.hpp"
#include "freqdim/manifest.hpp"
#include "freqdim/parallel.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;
using freqdim::InputError;

struct Globals {
  std::uint64_t seed = 0;
  unsigned threads = 1;
  int precision_bits = 0;
  bool json_output = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(origin + ": " + e.what());
  }
}

// A path to a JSON file, inline JSON, or one of golden, tribonacci, base-<g>.
json system_argument(const std::string& arg, const Globals& g) {
  json spec;
  if (arg == "golden" || arg == "tribonacci") {
    spec = {{"type", arg}};
  } else if (arg.rfind("base-", 0) == 0) {
    spec = {{"type", "linear"}, {"base", std::stoi(arg.substr(5))}};
  } else if (!arg.empty() && arg.front() == '{') {
    spec = parse_json_text(arg, "--system");
  } else {
    spec = parse_json_text(read_file(arg), arg);
  }
  if (g.precision_bits > 0 && spec.is_object() && spec.contains("value")) {
    spec["precision_bits"] = g.precision_bits;
  }
  return spec;
}

// Rationals are passed through as strings so that "0.1" stays exact.
void put_rational(json& params, const std::string& key, const std::string& value) {
  if (!value.empty()) params[key] = value;
}

std::vector<std::string> read_member_words(const std::string& path) {
  const auto rows = freqdim::parse_csv(read_file(path));
  if (rows.empty()) throw InputError(path + ": empty CSV");
  std::size_t col = rows[0].size();
  for (std::size_t j = 0; j < rows[0].size(); ++j) {
    if (rows[0][j] == "word") col = j;
  }
  if (col == rows[0].size()) throw InputError(path + ": no 'word' column");
  std::vector<std::string> words;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (col < rows[i].size()) words.push_back(rows[i][col]);
  }
  return words;
}

void print_scalars(const json& obj, const std::string& prefix) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it->is_object()) {
      print_scalars(*it, key);
    } else if (it->is_array()) {
      if (it->size() <= 16 && std::all_of(it->begin(), it->end(), [](const json& v) { return v.is_primitive(); })) {
        std::cout << key << ": " << it->dump() << "\n";
      } else {
        std::cout << key << ": [" << it->size() << " entries]\n";
      }
    } else if (it->is_string()) {
      std::cout << key << ": " << it->get<std::string>() << "\n";
    } else {
      std::cout << key << ": " << it->dump() << "\n";
    }
  }
}

void print_human(const json& report) {
  if (report.contains("error")) return;
  const std::string op = report.value("operation", "");
  const json& result = report["result"];
  if (op == "q_constant") {
    for (const auto& v : result["values"]) {
      std::string text = v["value"].get<std::string>();
      if (v.contains("exact") && v["exact"].get<std::string>().find_first_of("/.") == std::string::npos) {
        text = v["exact"].get<std::string>() + ".0";
      }
      std::cout << text << "\n";
    }
    return;
  }
  if (op == "expand" || op == "beta-one") {
    std::cout << result["digits"].get<std::string>() << "\n";
    return;
  }
  if (op == "synthesize") {
    std::cout << result["value"].get<std::string>() << "\n";
    return;
  }
  print_scalars(result, "");
  std::cout << "passed: " << (report["passed"].get<bool>() ? "true" : "false") << "\n";
}

int execute(json manifest, const Globals& g, const fs::path& base_dir, bool write_outputs) {
  if (!manifest.contains("seed")) manifest["seed"] = g.seed;
  freqdim::set_worker_threads(g.threads);
  const freqdim::ManifestOutcome out = freqdim::run_manifest(manifest, base_dir, write_outputs);
  if (out.exit_code == freqdim::kExitUsage || out.exit_code == freqdim::kExitResource ||
      !out.error.empty()) {
    std::cerr << "freqdim: " << out.error << "\n";
  }
  if (g.json_output || out.exit_code == freqdim::kExitResource) {
    std::cout << freqdim::render_report(out.report);
  } else {
    print_human(out.report);
  }
  return out.exit_code;
}

struct Inputs {
  std::string system;
  std::string x, digits, word, p, eps, s, mode = "cylinder", set, out, spec;
  int n = 0, m = 1, depth = -1, max_k = 64, ratio_depth = 12, max_depth = 6;
  std::size_t budget = 0;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"freqdim: digit-frequency sets, net measures and dimension experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Seed for every random draw")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads (0: hardware concurrency)")->capture_default_str();
  app.add_option("--precision-bits", g.precision_bits, "Override precision_bits of beta systems given by value");
  app.add_flag("--json", g.json_output, "Print the full JSON report");

  Inputs in;
  json manifest;
  fs::path base_dir;
  bool write_outputs = false;
  std::string csv_out;

  auto add_system = [&](CLI::App* cmd) {
    cmd->add_option("--system", in.system, "System JSON file, inline JSON, golden, tribonacci or base-<g>")
        ->required();
  };
  auto add_freqset = [&](CLI::App* cmd, bool required) {
    auto* mopt = cmd->add_option("--m", in.m, "Word length")->capture_default_str();
    auto* popt = cmd->add_option("--p", in.p, "Target frequencies, comma separated");
    auto* nopt = cmd->add_option("--n", in.n, "Generation");
    auto* eopt = cmd->add_option("--eps", in.eps, "Tolerance");
    cmd->add_option("--budget", in.budget, "Enumeration node budget");
    if (required) {
      popt->required();
      nopt->required();
      eopt->required();
    }
    (void)mopt;
  };

  auto* expand = app.add_subcommand("expand", "First n digits of x");
  add_system(expand);
  expand->add_option("--x", in.x, "Point in [0, 1), e.g. 1/3")->required();
  expand->add_option("--n", in.n, "Number of digits")->required();

  auto* synth = app.add_subcommand("synthesize", "Left endpoint of a digit word");
  add_system(synth);
  synth->add_option("--digits", in.digits, "Digit word")->required();

  auto* beta_one = app.add_subcommand("beta-one", "Greedy expansion of 1");
  add_system(beta_one);
  beta_one->add_option("--max-k", in.max_k, "Digit limit")->capture_default_str();

  auto* admissible = app.add_subcommand("admissible", "Admissibility of a word");
  add_system(admissible);
  admissible->add_option("--word", in.word, "Digit word")->required();

  auto* cyl = app.add_subcommand("cylinder", "Exact cylinder of a word");
  add_system(cyl);
  cyl->add_option("--word", in.word, "Digit word")->required();

  auto* ratio = app.add_subcommand("ratio", "Child-to-parent length ratio constant");
  add_system(ratio);
  ratio->add_option("--depth", in.depth, "Enumeration depth (default 12)");

  auto* freqset = app.add_subcommand("freqset", "Enumerate a frequency set");
  add_system(freqset);
  add_freqset(freqset, true);
  freqset->add_option("--out", in.out, "Member CSV (word,left,right,length)");

  auto* measure = app.add_subcommand("measure", "Net measure of a cylinder union");
  add_system(measure);
  add_freqset(measure, false);
  measure->add_option("--set", in.set, "Member CSV written by freqset");
  measure->add_option("--s", in.s, "Exponent in (0, 1]")->required();
  measure->add_option("--mode", in.mode, "cylinder or dyadic")->capture_default_str();
  measure->add_option("--depth", in.depth, "Dyadic depth cap");

  auto* scan = app.add_subcommand("scan", "Falconer-condition scan");
  add_system(scan);
  add_freqset(scan, false);
  scan->add_option("--set", in.set, "Member CSV written by freqset");
  scan->add_option("--s", in.s, "Exponent in (0, 1]")->required();
  scan->add_option("--max-depth", in.max_depth, "Largest dyadic depth scanned")->capture_default_str();
  scan->add_option("--depth", in.depth, "Dyadic depth cap for the measure");
  scan->add_option("--out", in.out, "CSV of scale,index,ratio_lower");

  auto* dimension = app.add_subcommand("dimension", "Dimension experiments");
  dimension->require_subcommand(1);
  std::vector<std::pair<std::string, std::string>> dim_ops = {
      {"oracle", "oracle"}, {"estimate", "estimate"}, {"scaling", "scaling"},
      {"witness", "witness"}, {"intersect", "intersect"}, {"q-constant", "q_constant"}};
  std::map<CLI::App*, std::string> dim_commands;
  auto add_spec_command = [&](CLI::App* parent, const std::string& name, const std::string& op) {
    auto* cmd = parent->add_subcommand(name, "Run the " + op + " experiment from a JSON spec");
    cmd->add_option("--spec", in.spec, "JSON file: parameters, or {system, parameters}")->required();
    cmd->add_option("--system", in.system, "System (overrides the spec file)");
    cmd->add_option("--out", in.out, "CSV table output");
    dim_commands[cmd] = op;
  };
  for (const auto& [name, op] : dim_ops) add_spec_command(dimension, name, op);
  add_spec_command(&app, "witness", "witness");
  add_spec_command(&app, "intersect", "intersect");

  auto* run = app.add_subcommand("run", "Run an experiment manifest");
  std::string manifest_path;
  run->add_option("manifest", manifest_path, "Manifest JSON file")->required();
  run->add_flag("--no-write", "Do not write the manifest's output files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : freqdim::kExitUsage;
  }

  try {
    json params = json::object();
    auto sub = app.get_subcommands().front();
    std::string op = sub->get_name();
    if (op == "run") {
      manifest = parse_json_text(read_file(manifest_path), manifest_path);
      base_dir = fs::path(manifest_path).parent_path();
      write_outputs = run->count("--no-write") == 0;
      return execute(std::move(manifest), g, base_dir, write_outputs);
    }
    if (op == "dimension") sub = sub->get_subcommands().front();
    if (dim_commands.count(sub)) {
      op = dim_commands[sub];
      json spec = parse_json_text(read_file(in.spec), in.spec);
      if (spec.contains("parameters")) {
        params = spec["parameters"];
        if (spec.contains("system")) manifest["system"] = spec["system"];
      } else {
        params = spec;
      }
      if (!in.system.empty()) manifest["system"] = system_argument(in.system, g);
    } else {
      manifest["system"] = system_argument(in.system, g);
      if (op == "expand") {
        params["x"] = in.x;
        params["n"] = in.n;
      } else if (op == "synthesize") {
        params["digits"] = in.digits;
      } else if (op == "beta-one") {
        params["max_k"] = in.max_k;
      } else if (op == "admissible" || op == "cylinder") {
        params["word"] = in.word;
      } else if (op == "ratio") {
        if (in.depth >= 0) params["depth"] = in.depth;
      } else {
        params["m"] = in.m;
        put_rational(params, "p", in.p);
        if (in.n > 0) params["n"] = in.n;
        put_rational(params, "eps", in.eps);
        if (in.budget > 0) params["budget"] = in.budget;
        if (!in.set.empty()) params["words"] = read_member_words(in.set);
        if (op == "measure") {
          put_rational(params, "s", in.s);
          params["mode"] = in.mode;
          if (in.depth >= 0) params["depth"] = in.depth;
        } else if (op == "scan") {
          put_rational(params, "s", in.s);
          params["max_depth"] = in.max_depth;
          if (in.depth >= 0) params["depth_cap"] = in.depth;
        }
      }
    }
    manifest["version"] = 1;
    manifest["operation"] = op;
    manifest["parameters"] = params;
    if (!in.out.empty()) manifest["outputs"] = {{"csv", in.out}};
    return execute(std::move(manifest), g, fs::current_path(), !in.out.empty());
  } catch (const freqdim::Error& e) {
    std::cerr << "freqdim: " << e.what() << "\n";
    return freqdim::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "freqdim: " << e.what() << "\n";
    return freqdim::kExitUsage;
  }
}
