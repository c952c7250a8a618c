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

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace nilaa {
namespace {

Json heisenberg_json() {
  return Json::parse(R"({
    "name": "h",
    "dim": 3,
    "params": ["t"],
    "structure_constants": [[1, 2, 3, "1"]],
    "lattice_basis": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1/2"]],
    "automorphism": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
    "translation": ["t", "0", "0"]
  })");
}

TEST(ParseSystem, MinimalHeisenberg) {
  const SystemFile f = parse_system_json(heisenberg_json());
  EXPECT_EQ(f.system.name, "h");
  EXPECT_EQ(f.system.dim(), 3u);
  EXPECT_EQ(f.system.params.names(), std::vector<std::string>{"t"});
  EXPECT_EQ(f.system.algebra().constant(0, 1, 2), 1);
  EXPECT_EQ(f.system.algebra().constant(1, 0, 2), -1);
  EXPECT_EQ(f.system.translation[0], Poly::var(0));
  EXPECT_FALSE(f.simulation);
}

TEST(ParseSystem, DefaultsToStandardLatticeAndIdentity) {
  const SystemFile f = parse_system_json(Json::parse(R"({"dim": 2})"));
  EXPECT_TRUE(f.system.algebra().is_abelian());
  EXPECT_EQ(f.system.lattice.basis(), QMatrix::identity(2));
  EXPECT_EQ(f.system.automorphism, QMatrix::identity(2));
  EXPECT_TRUE(is_zero(f.system.translation));
}

TEST(ParseSystem, AntisymmetryViolationIsAParseError) {
  Json j = heisenberg_json();
  j["structure_constants"] = Json::parse(R"([[1, 2, 3, "1"], [2, 1, 3, "1"]])");
  EXPECT_THROW(parse_system_json(j), ParseError);
}

TEST(ParseSystem, MalformedFields) {
  Json j = heisenberg_json();
  j["translation"] = Json::parse(R"(["t", "0"])");
  EXPECT_THROW(parse_system_json(j), Error);
  j = heisenberg_json();
  j["translation"][0] = "u";
  EXPECT_THROW(parse_system_json(j), Error);
  j = heisenberg_json();
  j["lattice_basis"][2][2] = "0.5";
  EXPECT_THROW(parse_system_json(j), Error);
  j = heisenberg_json();
  j.erase("dim");
  EXPECT_THROW(parse_system_json(j), ParseError);
  EXPECT_THROW(read_json_file(testing::corpus_path("does_not_exist")), ParseError);
}

TEST(ParseSystem, ValidationFailuresCarryTheCheck) {
  Json j = heisenberg_json();
  j["lattice_basis"][2][2] = "1";
  try {
    parse_system_json(j);
    FAIL() << "expected a validation error";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.check, "validate_lattice");
  }
  j = heisenberg_json();
  j["structure_constants"] = Json::parse(R"([[1, 2, 3, "1"], [1, 3, 1, "1"]])");
  try {
    parse_system_json(j);
    FAIL() << "expected a validation error";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.check, "validate_algebra");
  }
  j = heisenberg_json();
  j["automorphism"] = Json::parse(R"([["2", "0", "0"], ["0", "1", "0"], ["0", "0", "2"]])");
  try {
    parse_system_json(j);
    FAIL() << "expected a validation error";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.check, "preserves_lattice");
  }
}

TEST(ParseSystem, SimulationBlock) {
  Json j = heisenberg_json();
  j["simulation"] = Json::parse(R"({"param_values": {"t": 0.25}, "start": [0.1, 0.2, 0.3]})");
  const SystemFile f = parse_system_json(j);
  ASSERT_TRUE(f.simulation);
  EXPECT_EQ(f.simulation->param_values, std::vector<double>{0.25});
  EXPECT_EQ(*f.simulation->start, (Point{0.1, 0.2, 0.3}));
  j["simulation"]["param_values"] = Json::parse(R"({"s": 1})");
  EXPECT_THROW(parse_system_json(j), ParseError);
}

TEST(ParseSystem, EveryCorpusFileParsesOrFailsValidation) {
  for (const auto& e : std::filesystem::directory_iterator(NILAA_CORPUS_DIR)) {
    if (e.path().extension() != ".json" || e.path().stem() == "manifest") continue;
    try {
      parse_system(e.path().string());
    } catch (const ValidationError&) {
    } catch (const Error& err) {
      ADD_FAILURE() << e.path() << ": " << err.what();
    }
  }
}

TEST(VerdictFile, RoundTrip) {
  for (const auto& name : testing::valid_corpus()) {
    const AffineSystem sys = testing::load(name);
    for (const auto& c : criterion_names()) {
      const VerdictFile v = run_criterion(sys, c);
      const std::string text = serialize(v);
      EXPECT_EQ(parse_verdict(text), v) << name << " " << c;
      EXPECT_EQ(serialize(parse_verdict(text)), text);
      EXPECT_EQ(text.back(), '\n');
    }
  }
}

TEST(VerdictFile, ExitCodes) {
  EXPECT_EQ(exit_code("AA"), 0);
  EXPECT_EQ(exit_code("PASS"), 0);
  EXPECT_EQ(exit_code("NOT_AA"), 1);
  EXPECT_EQ(exit_code("FAIL"), 1);
  EXPECT_EQ(exit_code("INCONCLUSIVE"), 2);
  EXPECT_EQ(exit_code("ERROR"), 3);
}

TEST(RunCriterion, CertificatesForCorpus) {
  VerdictFile v = run_criterion(testing::load("free_nilpotent_2_3"), "full");
  EXPECT_EQ(v.status, "NOT_AA");
  EXPECT_EQ(v.certificate["kind"], "ObstructionBracket");
  EXPECT_EQ(v.certificate["x"], Json::parse(R"(["0", "1", "0", "0", "0"])"));
  EXPECT_EQ(v.certificate["y"], Json::parse(R"(["0", "0", "1", "0", "0"])"));

  v = run_criterion(testing::load("heisenberg_translation"), "translation");
  EXPECT_EQ(v.status, "AA");
  EXPECT_EQ(v.details["normal"], true);

  v = run_criterion(testing::load("cat_map"), "full");
  EXPECT_EQ(v.status, "ERROR");
  v = run_criterion(testing::load("cat_map"), "nonsense");
  EXPECT_EQ(v.status, "ERROR");

  v = run_criterion(testing::load("free_nilpotent_2_3"), "two-generator");
  EXPECT_EQ(v.status, "PASS");
  EXPECT_EQ(v.details["stated_formula_discrepancy"], true);
}

TEST(ValidationVerdict, OneBasedPairAndWitness) {
  try {
    parse_system(testing::corpus_path("filiform_4d"));
    FAIL();
  } catch (const ValidationError& e) {
    const VerdictFile v = validation_verdict("filiform_4d", e);
    EXPECT_EQ(v.status, "FAIL");
    EXPECT_EQ(v.certificate["check"], "is_automorphism");
    EXPECT_EQ(v.certificate["pair"], Json::parse("[1, 3]"));
    EXPECT_EQ(v.certificate["witness"], Json::parse(R"(["0", "0", "0", "1"])"));
  }
}

}  // namespace
}  // namespace nilaa
