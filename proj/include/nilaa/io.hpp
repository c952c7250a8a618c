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

#ifndef NILAA_IO_HPP
#define NILAA_IO_HPP

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "nilaa/criteria.hpp"
#include "nilaa/orbit.hpp"

namespace nilaa {

using Json = nlohmann::json;

/// Malformed input; `location` is a JSON path such as "automorphism[1][0]".
class ParseError : public Error {
 public:
  ParseError(std::string location, const std::string& what)
      : Error(location + ": " + what), location(std::move(location)) {}
  std::string location;
};

struct SimulationConfig {
  std::vector<double> param_values;  ///< indexed like the system parameters
  std::optional<Point> start;
};

struct SystemFile {
  AffineSystem system;
  std::optional<SimulationConfig> simulation;
};

namespace detail {

inline const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(where.empty() ? key : where + "." + key, "missing field");
  return j.at(key);
}

inline std::string child(const std::string& where, const std::string& key) {
  return where.empty() ? key : where + "." + key;
}

inline std::string index(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }

inline Rational rational_at(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(Integer(j.dump()));
  if (!j.is_string()) throw ParseError(where, "expected a rational string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    throw ParseError(where, e.what());
  }
}

inline QVector rational_vector_at(const Json& j, std::size_t d, const std::string& where) {
  if (!j.is_array() || j.size() != d) throw ParseError(where, "expected an array of length " + std::to_string(d));
  QVector v(d);
  for (std::size_t i = 0; i < d; ++i) v[i] = rational_at(j[i], index(where, i));
  return v;
}

inline QMatrix rational_matrix_rows(const Json& j, std::size_t d, const std::string& where) {
  if (!j.is_array() || j.size() != d) throw ParseError(where, "expected " + std::to_string(d) + " rows");
  QMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    QVector r = rational_vector_at(j[i], d, index(where, i));
    for (std::size_t k = 0; k < d; ++k) m(i, k) = r[k];
  }
  return m;
}

inline std::size_t size_at(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 1) throw ParseError(where, "expected a positive integer");
  return static_cast<std::size_t>(j.get<long long>());
}

}  // namespace detail

/// Parses and validates a system description. Algebra, lattice and
/// automorphism failures raise ValidationError naming the check.
inline SystemFile parse_system_json(const Json& j) {
  using namespace detail;
  if (!j.is_object()) throw ParseError("$", "expected an object");
  const std::size_t d = size_at(require(j, "dim", ""), "dim");
  std::string name = j.value("name", std::string("unnamed"));

  ParamContext params;
  if (j.contains("params")) {
    const Json& p = j.at("params");
    if (!p.is_array()) throw ParseError("params", "expected an array of names");
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!p[i].is_string()) throw ParseError(index("params", i), "expected a name");
      const std::string n = p[i].get<std::string>();
      if (params.index_of(n)) throw ParseError(index("params", i), "duplicate parameter '" + n + "'");
      params.add(n);
    }
  }

  std::vector<StructureConstant> constants;
  if (j.contains("structure_constants")) {
    const Json& sc = j.at("structure_constants");
    if (!sc.is_array()) throw ParseError("structure_constants", "expected an array");
    for (std::size_t n = 0; n < sc.size(); ++n) {
      const std::string where = index("structure_constants", n);
      const Json& e = sc[n];
      if (!e.is_array() || e.size() != 4) throw ParseError(where, "expected [i, j, k, value]");
      std::size_t ijk[3];
      for (std::size_t t = 0; t < 3; ++t) {
        ijk[t] = size_at(e[t], index(where, t));
        if (ijk[t] > d) throw ParseError(index(where, t), "index exceeds dim");
      }
      constants.push_back({ijk[0] - 1, ijk[1] - 1, ijk[2] - 1, rational_at(e[3], index(where, 3))});
    }
  }
  LieAlgebra algebra;
  try {
    algebra = LieAlgebra(d, constants);
  } catch (const AntisymmetryError& e) {
    throw ParseError("structure_constants", e.what());
  }

  std::optional<NilpotentGroup> group;
  try {
    group.emplace(algebra);
  } catch (const JacobiViolation& e) {
    ValidationError v("validate_algebra", e.what());
    v.witness = e.residual;
    throw v;
  } catch (const NotNilpotent& e) {
    throw ValidationError("validate_algebra", e.what());
  } catch (const ClassCapExceeded& e) {
    throw ValidationError("validate_algebra", e.what());
  }

  QMatrix basis = QMatrix::identity(d);
  if (j.contains("lattice_basis")) {
    const Json& lb = j.at("lattice_basis");
    if (!lb.is_array() || lb.size() != d) throw ParseError("lattice_basis", "expected " + std::to_string(d) + " generators");
    for (std::size_t c = 0; c < d; ++c) basis.set_column(c, rational_vector_at(lb[c], d, index("lattice_basis", c)));
  }
  std::optional<LogLattice> lattice;
  try {
    lattice.emplace(basis);
  } catch (const RankDeficient& e) {
    throw ValidationError("validate_lattice", e.what());
  }

  const QMatrix u = j.contains("automorphism") ? rational_matrix_rows(j.at("automorphism"), d, "automorphism")
                                                : QMatrix::identity(d);

  ParamVector translation(d, Poly(0));
  if (j.contains("translation")) {
    const Json& t = j.at("translation");
    if (!t.is_array() || t.size() != d) throw ParseError("translation", "expected " + std::to_string(d) + " entries");
    for (std::size_t i = 0; i < d; ++i) {
      const std::string where = index("translation", i);
      if (t[i].is_number_integer()) {
        translation[i] = Poly(rational_at(t[i], where));
        continue;
      }
      if (!t[i].is_string()) throw ParseError(where, "expected a polynomial string");
      try {
        translation[i] = parse_poly(t[i].get<std::string>(), params);
      } catch (const Error& e) {
        throw ParseError(where, e.what());
      }
    }
  }

  std::optional<GeneratorPair> gens;
  if (j.contains("two_generator")) {
    const Json& tg = j.at("two_generator");
    gens = GeneratorPair{rational_vector_at(require(tg, "xi", "two_generator"), d, "two_generator.xi"),
                         rational_vector_at(require(tg, "eta", "two_generator"), d, "two_generator.eta")};
  }

  std::vector<std::string> notes;
  if (j.contains("notes")) {
    const Json& n = j.at("notes");
    if (n.is_string()) {
      notes.push_back(n.get<std::string>());
    } else if (n.is_array()) {
      for (std::size_t i = 0; i < n.size(); ++i) {
        if (!n[i].is_string()) throw ParseError(index("notes", i), "expected a string");
        notes.push_back(n[i].get<std::string>());
      }
    } else {
      throw ParseError("notes", "expected a string or an array of strings");
    }
  }

  std::optional<SimulationConfig> sim;
  if (j.contains("simulation")) {
    const Json& s = j.at("simulation");
    if (!s.is_object()) throw ParseError("simulation", "expected an object");
    SimulationConfig cfg;
    cfg.param_values.assign(params.size(), 0.0);
    if (s.contains("param_values")) {
      const Json& pv = s.at("param_values");
      if (!pv.is_object()) throw ParseError("simulation.param_values", "expected an object");
      for (auto it = pv.begin(); it != pv.end(); ++it) {
        auto idx = params.index_of(it.key());
        if (!idx) throw ParseError("simulation.param_values." + it.key(), "unknown parameter");
        if (!it.value().is_number()) throw ParseError("simulation.param_values." + it.key(), "expected a number");
        cfg.param_values[*idx] = it.value().get<double>();
      }
    }
    if (s.contains("start")) {
      const Json& st = s.at("start");
      if (!st.is_array() || st.size() != d) throw ParseError("simulation.start", "expected " + std::to_string(d) + " numbers");
      Point p(d);
      for (std::size_t i = 0; i < d; ++i) {
        if (!st[i].is_number()) throw ParseError(index("simulation.start", i), "expected a number");
        p[i] = st[i].get<double>();
      }
      cfg.start = std::move(p);
    }
    sim = std::move(cfg);
  }

  SystemFile out{AffineSystem{std::move(name), std::move(params), std::move(*group), std::move(*lattice), u,
                              std::move(translation), std::move(gens), std::move(notes)},
                 std::move(sim)};
  validate_system(out.system);
  return out;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ":byte " + std::to_string(e.byte), e.what());
  }
}

inline SystemFile parse_system(const std::string& path) { return parse_system_json(read_json_file(path)); }

/// Output of every CLI command.
struct VerdictFile {
  std::string status;  ///< AA, NOT_AA, INCONCLUSIVE, PASS, FAIL or ERROR
  std::string criterion;
  std::string system;
  Json certificate = Json::object();
  std::vector<std::string> notes;
  Json details = Json::object();

  friend bool operator==(const VerdictFile&, const VerdictFile&) = default;
};

inline Json to_json(const VerdictFile& v) {
  return Json{{"status", v.status},         {"criterion", v.criterion}, {"system", v.system},
              {"certificate", v.certificate}, {"notes", v.notes},         {"details", v.details}};
}

inline VerdictFile verdict_from_json(const Json& j) {
  using detail::require;
  VerdictFile v;
  v.status = require(j, "status", "").get<std::string>();
  v.criterion = require(j, "criterion", "").get<std::string>();
  v.system = require(j, "system", "").get<std::string>();
  v.certificate = require(j, "certificate", "");
  v.notes = require(j, "notes", "").get<std::vector<std::string>>();
  v.details = require(j, "details", "");
  return v;
}

/// Canonical text: sorted keys, two-space indent, trailing newline.
inline std::string serialize(const VerdictFile& v) { return to_json(v).dump(2) + "\n"; }

inline VerdictFile parse_verdict(const std::string& text) { return verdict_from_json(Json::parse(text)); }

inline int exit_code(const std::string& status) {
  if (status == "AA" || status == "PASS") return 0;
  if (status == "NOT_AA" || status == "FAIL") return 1;
  if (status == "INCONCLUSIVE") return 2;
  return 3;
}

// ---------------------------------------------------------------------------
// Certificates as JSON

inline Json to_json(const QVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

inline Json to_json(const ParamVector& v, const ParamContext& ctx) {
  Json a = Json::array();
  for (const auto& p : v) a.push_back(p.to_string(ctx));
  return a;
}

inline Json to_json(const QSubspace& s) {
  Json a = Json::array();
  for (const auto& b : s.basis()) a.push_back(to_json(b));
  return a;
}

inline Json columns_json(const QMatrix& m) {
  Json a = Json::array();
  for (std::size_t j = 0; j < m.cols(); ++j) a.push_back(to_json(m.column(j)));
  return a;
}

inline Json rows_json(const QMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

inline Json certificate_json(const Certificate& c, const ParamContext& ctx) {
  struct Visitor {
    const ParamContext& ctx;
    Json operator()(const NoCertificate&) const { return Json{{"kind", "None"}}; }
    Json operator()(const WitnessSubspace& w) const {
      return Json{{"kind", "WitnessSubspace"}, {"basis", to_json(w.space)}, {"dim", w.space.dim()}};
    }
    Json operator()(const ObstructionBracket& o) const {
      return Json{{"kind", "ObstructionBracket"}, {"x", to_json(o.x)}, {"y", to_json(o.y)}, {"bracket", to_json(o.bracket)}};
    }
    Json operator()(const NotFixed& n) const {
      return Json{{"kind", "NotFixed"}, {"v", to_json(n.v)}, {"image", to_json(n.image)}};
    }
    Json operator()(const CosetObstruction& o) const {
      return Json{{"kind", "CosetObstruction"}, {"vector", to_json(o.vector, ctx)}, {"lattice", columns_json(o.lattice)}};
    }
    Json operator()(const SpectralObstruction& s) const {
      return Json{{"kind", "SpectralObstruction"}, {"factor", s.factor.to_string()}};
    }
    Json operator()(const UnipotentPower& u) const { return Json{{"kind", "UnipotentPower"}, {"r", u.r.get_str()}}; }
  };
  return std::visit(Visitor{ctx}, c);
}

inline VerdictFile error_verdict(const std::string& criterion, const std::string& system, const std::string& what,
                                 Json certificate = Json{{"kind", "Error"}}) {
  VerdictFile v{"ERROR", criterion, system, std::move(certificate), {what}, Json::object()};
  return v;
}

inline VerdictFile validation_verdict(const std::string& system, const ValidationError& e,
                                      const std::vector<std::string>& notes = {}) {
  Json cert{{"kind", "ValidationError"}, {"check", e.check}, {"message", e.what()}};
  if (e.pair) cert["pair"] = Json::array({e.pair->first + 1, e.pair->second + 1});
  if (!e.witness.empty()) cert["witness"] = to_json(e.witness);
  VerdictFile v{"FAIL", "validate", system, cert, notes, Json::object()};
  return v;
}

inline const std::vector<std::string>& criterion_names() {
  static const std::vector<std::string> names{"full",           "basepoint",  "torus",        "translation",
                                              "lie",            "power-unipotent", "minimality", "two-generator"};
  return names;
}

namespace detail {

inline VerdictFile from_verdict(const Verdict& v, const std::string& criterion, const AffineSystem& sys) {
  VerdictFile f{to_string(v.status), criterion, sys.name, certificate_json(v.certificate, sys.params), v.notes,
                Json::object()};
  return f;
}

}  // namespace detail

/// Runs one criterion on a validated system. Errors raised by the criterion
/// become ERROR verdicts.
inline VerdictFile run_criterion(const AffineSystem& sys, const std::string& criterion) {
  VerdictFile out;
  try {
    if (criterion == "full") {
      out = detail::from_verdict(full_decide(sys), criterion, sys);
    } else if (criterion == "basepoint") {
      out = detail::from_verdict(basepoint_decide(sys), criterion, sys);
    } else if (criterion == "torus") {
      out = detail::from_verdict(torus_decide(sys), criterion, sys);
    } else if (criterion == "translation") {
      TranslationReport r = translation_decide(sys);
      out = detail::from_verdict(r.verdict, criterion, sys);
      out.details["normal"] = r.normal;
    } else if (criterion == "lie") {
      LieCheck c = lie_necessary(sys);
      out = VerdictFile{c.pass ? "PASS" : "FAIL", criterion, sys.name, Json::object(), c.notes, Json::object()};
      if (c.pass) {
        out.certificate = Json{{"kind", "LieConditions"}};
      } else if (c.failed_condition == 1) {
        out.certificate = Json{{"kind", "CompositeEntry"},
                               {"entry", Json::array({c.entry->first + 1, c.entry->second + 1})},
                               {"value", c.value.to_string(sys.params)}};
      } else {
        out.certificate = Json{{"kind", "ImageBracket"},
                               {"columns", Json::array({c.entry->first + 1, c.entry->second + 1})},
                               {"x", to_json(c.x, sys.params)},
                               {"y", to_json(c.y, sys.params)},
                               {"bracket", to_json(c.bracket, sys.params)}};
      }
      out.details["failed_condition"] = c.failed_condition;
      out.details["nilrank"] = *nilrank(sys.automorphism);
    } else if (criterion == "power-unipotent") {
      const QMatrix a = sys.lattice.inverse_basis() * sys.automorphism * sys.lattice.basis();
      auto r = power_unipotent(a);
      const bool unip = std::holds_alternative<UnipotentPower>(r);
      Certificate c = unip ? Certificate(std::get<UnipotentPower>(r)) : Certificate(std::get<SpectralObstruction>(r));
      out = VerdictFile{unip ? "PASS" : "FAIL", criterion, sys.name, certificate_json(c, sys.params), {},
                        Json::object()};
      if (!unip) out.notes.push_back("some eigenvalue lies off the unit circle");
    } else if (criterion == "minimality") {
      MinimalityResult m = minimality_check(sys);
      switch (m.status) {
        case MinimalityStatus::Minimal:
          out = VerdictFile{"PASS", criterion, sys.name, Json{{"kind", "Minimal"}}, {}, Json::object()};
          break;
        case MinimalityStatus::NotMinimal: {
          Json ch = Json::array();
          for (const auto& x : m.character) ch.push_back(x.get_str());
          out = VerdictFile{"FAIL", criterion, sys.name,
                            Json{{"kind", "InvariantSubtorus"}, {"character", ch}, {"value", m.value.get_str()}},
                            {"the character is rational on the translation, so its kernel cosets are invariant"},
                            Json::object()};
          break;
        }
        case MinimalityStatus::Inconclusive:
          out = VerdictFile{"INCONCLUSIVE", criterion, sys.name, Json{{"kind", "None"}},
                            {"minimality is decided for translations only"}, Json::object()};
          break;
      }
      if (m.status != MinimalityStatus::Inconclusive) {
        out.details["torus_basis"] = columns_json(m.torus_basis);
        out.details["abelianized_translation"] = to_json(m.abelianized_translation, sys.params);
      }
    } else if (criterion == "two-generator") {
      TwoGeneratorReport r = two_generator_analysis(sys);
      const bool ok = r.all_nonzero && r.oracle_agrees;
      out = VerdictFile{ok ? "PASS" : "FAIL", criterion, sys.name, Json{{"kind", "TwoGeneratorReport"}}, {},
                        Json::object()};
      Json basis = Json::array();
      for (const auto& b : r.basis) basis.push_back(to_json(b));
      out.certificate["n"] = r.n;
      out.certificate["basis"] = basis;
      out.certificate["tau_matrix"] = rows_json(r.tau_matrix);
      out.certificate["coefficients"] = to_json(QVector(r.coefficients));
      out.certificate["M_subspace"] = to_json(r.m_subspace);
      out.certificate["abelian_M"] = r.abelian_m;
      out.details["matrix_coefficients"] = to_json(QVector(r.matrix_coefficients));
      out.details["stated_coefficients"] = to_json(QVector(r.stated_coefficients));
      out.details["oracle_agrees"] = r.oracle_agrees;
      out.details["all_nonzero"] = r.all_nonzero;
      out.details["u_fixes_M"] = r.u_fixes_m;
      out.details["a_t"] = to_json(r.a_t, r.context);
      out.details["stated_formula_discrepancy"] = !r.stated_formula_agrees;
      if (!r.stated_formula_agrees)
        out.notes.push_back("computed coefficients follow (-1)^k/(k+1)!, not the stated (-1)^k/k!");
    } else {
      throw InapplicableCriterion("unknown criterion '" + criterion + "'");
    }
  } catch (const HypothesisViolated& e) {
    out = error_verdict(criterion, sys.name, e.what(), Json{{"kind", "HypothesisViolated"}, {"which", e.which}});
  } catch (const Error& e) {
    out = error_verdict(criterion, sys.name, e.what());
  }
  for (const auto& n : sys.notes) out.notes.push_back(n);
  return out;
}

}  // namespace nilaa

#endif  // NILAA_IO_HPP
