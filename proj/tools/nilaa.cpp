// Copyright 2026 The nilaa Authors
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

// Command-line front end: validate, decide, suspend, simulate, corpus run.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nilaa/nilaa.hpp"

namespace fs = std::filesystem;
using namespace nilaa;

namespace {

std::vector<std::string> raw_notes(const std::string& path) {
  try {
    Json j = read_json_file(path);
    if (j.contains("notes") && j["notes"].is_array()) return j["notes"].get<std::vector<std::string>>();
    if (j.contains("notes") && j["notes"].is_string()) return {j["notes"].get<std::string>()};
  } catch (const std::exception&) {
  }
  return {};
}

std::string stem_name(const std::string& path) { return fs::path(path).stem().string(); }

VerdictFile validate_file(const std::string& path) {
  try {
    SystemFile f = parse_system(path);
    const AffineSystem& s = f.system;
    Json cert{{"kind", "Valid"}, {"dim", s.dim()}, {"nilpotency_class", s.group.nilpotency_class()}};
    if (auto k = nilrank(s.automorphism)) cert["nilrank"] = *k;
    return VerdictFile{"PASS", "validate", s.name, cert, s.notes, Json::object()};
  } catch (const ValidationError& e) {
    std::string name = stem_name(path);
    try {
      name = read_json_file(path).value("name", name);
    } catch (const std::exception&) {
    }
    return validation_verdict(name, e, raw_notes(path));
  } catch (const std::exception& e) {
    return error_verdict("validate", stem_name(path), e.what());
  }
}

VerdictFile decide_file(const std::string& path, const std::string& criterion) {
  std::optional<SystemFile> f;
  try {
    f.emplace(parse_system(path));
  } catch (const ValidationError& e) {
    VerdictFile v = validation_verdict(stem_name(path), e, raw_notes(path));
    v.status = "ERROR";
    v.criterion = criterion;
    return v;
  } catch (const std::exception& e) {
    return error_verdict(criterion, stem_name(path), e.what());
  }
  return run_criterion(f->system, criterion);
}

int emit(const VerdictFile& v) {
  std::cout << serialize(v);
  if (v.status == "ERROR")
    for (const auto& n : v.notes) std::cerr << "error: " << n << "\n";
  return exit_code(v.status);
}

Json suspension_json(const AffineSystem& sys, const SuspendedSystem& s) {
  Json sc = Json::array();
  for (const auto& e : s.big_algebra().entries())
    sc.push_back(Json::array({e.i + 1, e.j + 1, e.k + 1, e.value.get_str()}));
  return Json{{"kind", "suspension"},
              {"name", sys.name + "_suspended"},
              {"dim", sys.dim() + 1},
              {"params", sys.params.names()},
              {"structure_constants", sc},
              {"derivation", rows_json(s.derivation)},
              {"fiber_lattice_basis", columns_json(s.fiber_lattice.basis())},
              {"translation", to_json(s.embedded_translation, sys.params)}};
}

int cmd_suspend(const std::string& path, const std::string& output, std::size_t samples, std::uint64_t seed) {
  std::optional<SystemFile> f;
  try {
    f.emplace(parse_system(path));
  } catch (const std::exception& e) {
    return emit(error_verdict("suspend", stem_name(path), e.what()));
  }
  const AffineSystem& sys = f->system;
  try {
    SuspendedSystem s = suspend(sys);
    if (!output.empty()) {
      std::ofstream out(output);
      if (!out) return emit(error_verdict("suspend", sys.name, "cannot write " + output));
      out << suspension_json(sys, s).dump(2) << "\n";
    }
    VerdictFile v{"PASS", "suspend", sys.name, Json{{"kind", "Suspension"}}, {}, Json::object()};
    v.certificate["derivation"] = rows_json(s.derivation);
    v.certificate["nilpotency_class"] = s.big_group.nilpotency_class();
    v.details["basepoint"] = to_string(basepoint_decide(s.as_translation).status);
    if (is_constant(sys.translation)) {
      ConsistencyReport r = embedding_consistency_check(sys, s, samples, seed);
      v.details["consistency_samples"] = r.samples;
      v.details["consistent"] = r.pass;
      if (!r.pass) {
        v.status = "FAIL";
        v.certificate["mismatch"] = Json{{"sample", r.mismatch->sample},
                                         {"point", to_json(r.mismatch->point)},
                                         {"direct", to_json(r.mismatch->direct)},
                                         {"via_suspension", to_json(r.mismatch->via_suspension)}};
      }
    } else {
      v.notes.push_back("consistency check skipped: the translation has free parameters");
    }
    return emit(v);
  } catch (const std::exception& e) {
    return emit(error_verdict("suspend", sys.name, e.what()));
  }
}

Json point_json(const Point& p) {
  Json a = Json::array();
  for (double x : p) a.push_back(x);
  return a;
}

int cmd_simulate(const std::string& path, long horizon, double eps, std::uint64_t seed, std::size_t trials,
                 const std::string& dump, long dump_steps) {
  std::optional<SystemFile> f;
  try {
    f.emplace(parse_system(path));
  } catch (const std::exception& e) {
    return emit(error_verdict("simulate", stem_name(path), e.what()));
  }
  const AffineSystem& sys = f->system;
  if (!f->simulation) return emit(error_verdict("simulate", sys.name, "the system file has no simulation block"));
  try {
    NumericAffine map = numeric_from_system(sys, f->simulation->param_values);
    if (!dump.empty()) {
      std::ofstream out(dump);
      if (!out) return emit(error_verdict("simulate", sys.name, "cannot write " + dump));
      Point x0 = f->simulation->start.value_or(Point(map.dim, 0.0));
      dump_trajectory(out, map, x0, dump_steps);
    }
    AATestReport r = aa_empirical_test(map, trials, eps, horizon, seed, f->simulation->start);
    const bool falsified = r.verdict == AAVerdict::Falsified;
    VerdictFile v{falsified ? "FAIL" : "PASS", "simulate", sys.name,
                  Json{{"kind", falsified ? "Falsified" : "ConsistentWithAA"}}, {}, Json::object()};
    v.details = Json{{"trials", r.trials}, {"horizon", r.horizon}, {"eps", r.epsilon_forward}, {"seed", r.seed}};
    if (falsified) {
      const AAWitness& w = *r.witness;
      v.certificate["x"] = point_json(w.x);
      v.certificate["y"] = point_json(w.y);
      v.certificate["sequence"] = w.sequence;
      v.certificate["k"] = w.k;
      v.certificate["forward_distance"] = w.forward_distance;
      v.certificate["backward_distance"] = w.backward_distance;
    } else {
      v.notes.push_back("simulation can refute almost automorphy but not prove it");
    }
    return emit(v);
  } catch (const std::exception& e) {
    return emit(error_verdict("simulate", sys.name, e.what()));
  }
}

std::string read_text(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Manifest entries: {"file", "validation": "ok" or a check name,
/// "criteria": {name: expected exit code}}.
int cmd_corpus_run(const std::string& dir, bool update) {
  const fs::path root(dir);
  Json manifest;
  try {
    manifest = read_json_file((root / "manifest.json").string());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  std::vector<Json> entries(manifest.at("systems").begin(), manifest.at("systems").end());
  std::sort(entries.begin(), entries.end(),
            [](const Json& a, const Json& b) { return a.at("file").get<std::string>() < b.at("file").get<std::string>(); });
  fs::create_directories(root / "golden");
  std::size_t checked = 0, failures = 0;
  auto check = [&](const std::string& stem, const std::string& label, const VerdictFile& v, int expected_exit) {
    ++checked;
    const std::string text = serialize(v);
    const fs::path golden = root / "golden" / (stem + "." + label + ".json");
    bool ok = exit_code(v.status) == expected_exit;
    if (!ok)
      std::cerr << stem << " " << label << ": exit " << exit_code(v.status) << ", expected " << expected_exit << "\n";
    if (update) {
      std::ofstream(golden) << text;
    } else if (!fs::exists(golden)) {
      std::cerr << stem << " " << label << ": missing golden file\n";
      ok = false;
    } else if (read_text(golden) != text) {
      std::cerr << stem << " " << label << ": output differs from golden file\n";
      ok = false;
    }
    if (!ok) ++failures;
    std::cout << (ok ? "ok   " : "FAIL ") << stem << " " << label << "\n";
  };
  for (const Json& e : entries) {
    const std::string file = e.at("file").get<std::string>();
    const std::string stem = fs::path(file).stem().string();
    const std::string path = (root / file).string();
    const std::string expect = e.value("validation", std::string("ok"));
    VerdictFile v = validate_file(path);
    const std::string got = v.status == "PASS" ? "ok" : v.certificate.value("check", std::string("error"));
    if (got != expect) {
      std::cerr << stem << ": validation gave " << got << ", manifest declares " << expect << "\n";
      ++failures;
    }
    check(stem, "validate", v, expect == "ok" ? 0 : 1);
    if (e.contains("criteria"))
      for (auto it = e.at("criteria").begin(); it != e.at("criteria").end(); ++it)
        check(stem, it.key(), decide_file(path, it.key()), it.value().get<int>());
  }
  std::cout << checked << " checks, " << failures << " failures\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Almost automorphy of affine maps on nilmanifolds"};
  app.require_subcommand(1);

  std::string file, criterion, output, dump, dir;
  long horizon = 100000, dump_steps = 1000;
  double eps = 1e-3;
  std::uint64_t seed = 1;
  std::size_t trials = 20, samples = 50;
  bool update = false;

  auto* validate = app.add_subcommand("validate", "Parse and validate a system file");
  validate->add_option("file", file, "System file")->required();

  auto* decide = app.add_subcommand("decide", "Run one criterion");
  decide->add_option("file", file, "System file")->required();
  decide->add_option("--criterion", criterion, "Criterion")->required()->check(CLI::IsMember(criterion_names()));

  auto* susp = app.add_subcommand("suspend", "Build the suspension and check the embedding");
  susp->add_option("file", file, "System file")->required();
  susp->add_option("-o,--output", output, "Write the suspended system here");
  susp->add_option("--samples", samples, "Random points for the consistency check");
  susp->add_option("--seed", seed, "Random seed");

  auto* sim = app.add_subcommand("simulate", "Empirical almost-automorphy test");
  sim->add_option("file", file, "System file")->required();
  sim->add_option("--horizon", horizon, "Largest return time searched");
  sim->add_option("--eps", eps, "Forward closeness threshold");
  sim->add_option("--seed", seed, "Random seed");
  sim->add_option("--trials", trials, "Number of sampled points");
  sim->add_option("--dump", dump, "Write the trajectory of the start point as CSV");
  sim->add_option("--dump-steps", dump_steps, "Trajectory length for --dump");

  auto* corpus = app.add_subcommand("corpus", "Bundled corpus");
  corpus->require_subcommand(1);
  auto* run = corpus->add_subcommand("run", "Check every corpus system against its golden output");
  run->add_option("--dir", dir, "Corpus directory")->required();
  run->add_flag("--update-golden", update, "Rewrite golden files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }

  if (*validate) return emit(validate_file(file));
  if (*decide) return emit(decide_file(file, criterion));
  if (*susp) return cmd_suspend(file, output, samples, seed);
  if (*sim) return cmd_simulate(file, horizon, eps, seed, trials, dump, dump_steps);
  if (*run) return cmd_corpus_run(dir, update);
  return 3;
}
