#pragma once

// JSON and CSV emission. Integers beyond 53 bits are written as decimal strings.

#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "blowdown/geography.hpp"
#include "blowdown/manifold_ledger.hpp"
#include "blowdown/report.hpp"

namespace blowdown {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

inline Json to_json(const Integer& v) {
  static const Integer limit = Integer(1) << 53;
  if (abs(v) < limit) return Json(v.get_si());
  return Json(v.get_str());
}

inline Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) {
    Integer v;
    if (v.set_str(j.get<std::string>(), 10) != 0) throw DomainError("json: bad integer '" + j.get<std::string>() + "'");
    return v;
  }
  throw DomainError("json: expected an integer, got " + j.dump());
}

inline Json to_json(const std::vector<Integer>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline Json to_json(const IntMatrix& m) {
  Json a = Json::array();
  for (const auto& row : m) a.push_back(to_json(row));
  return a;
}

inline IntMatrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw DomainError("json: expected a matrix");
  IntMatrix m;
  for (const auto& row : j) {
    if (!row.is_array()) throw DomainError("json: expected a matrix row");
    std::vector<Integer> r;
    for (const auto& v : row) r.push_back(integer_from_json(v));
    m.push_back(std::move(r));
  }
  return m;
}

inline Json lattice_to_json(const IntLattice& L) {
  return Json{{"labels", L.labels()}, {"gram", to_json(L.gram())}};
}

inline LatticePtr lattice_from_json(const Json& j) {
  if (!j.contains("labels") || !j.contains("gram")) throw DomainError("json: lattice needs labels and gram");
  return IntLattice::make(j.at("labels").get<std::vector<std::string>>(), matrix_from_json(j.at("gram")));
}

inline HomClass class_from_json(const LatticePtr& L, const Json& j) {
  const Json& c = j.is_object() ? j.at("coeffs") : j;
  std::vector<Integer> v;
  for (const auto& x : c) v.push_back(integer_from_json(x));
  if (v.size() != L->rank()) {
    throw DomainError("json: class has " + std::to_string(v.size()) + " coefficients, lattice rank is " +
                      std::to_string(L->rank()));
  }
  return HomClass(L, std::move(v));
}

inline Json connectivity_json(Connectivity c) {
  switch (c) {
    case Connectivity::yes: return true;
    case Connectivity::no: return false;
    case Connectivity::unknown: return nullptr;
  }
  return nullptr;
}

inline Json checks_to_json(const std::vector<Check>& checks) {
  Json a = Json::array();
  for (const auto& c : checks) a.push_back(Json{{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}});
  return a;
}

inline std::vector<Check> checks_from_json(const Json& j) {
  std::vector<Check> out;
  for (const auto& c : j) {
    Check k{c.at("name").get<std::string>(), CheckStatus::failed, c.at("detail").get<std::string>()};
    const std::string s = c.at("status").get<std::string>();
    if (s == "verified") k.status = CheckStatus::verified;
    else if (s == "asserted") k.status = CheckStatus::asserted;
    else if (s != "failed") throw DomainError("json: unknown check status '" + s + "'");
    out.push_back(std::move(k));
  }
  return out;
}

inline Json ledger_document(const ManifoldLedger& m, const std::vector<Check>& checks) {
  Json d;
  d["schema_version"] = kSchemaVersion;
  d["name"] = m.name;
  d["e"] = to_json(m.e);
  d["sign"] = to_json(m.sign);
  d["b_plus"] = to_json(m.b_plus);
  d["b_minus"] = to_json(m.b_minus);
  d["chi_h"] = to_json(m.chi_h);
  d["c1_sq"] = to_json(m.c1sq);
  d["simply_connected"] = connectivity_json(m.simply_connected);
  d["symplectic"] = m.symplectic;
  d["lattice"] = m.lattice ? lattice_to_json(*m.lattice) : Json(nullptr);
  d["K"] = m.K ? to_json(m.K->coeffs()) : Json(nullptr);
  Json surfaces = Json::array();
  for (const auto& s : m.surfaces) {
    Json js;
    js["label"] = s.label;
    js["genus"] = to_json(s.genus);
    js["self_int"] = to_json(s.self_int);
    js["symplectic"] = s.symplectic;
    js["complement_simply_connected"] = s.complement_simply_connected;
    js["coeffs"] = s.cls ? to_json(s.cls->coeffs()) : Json(nullptr);
    surfaces.push_back(std::move(js));
  }
  d["surfaces"] = std::move(surfaces);
  d["provenance"] = m.provenance;
  d["checks"] = checks_to_json(checks);
  return d;
}

struct LedgerDocument {
  ManifoldLedger ledger;
  std::vector<Check> checks;
};

/*
 * Parse and re-validate: the invariants are rebuilt from (e, sign) and
 * must match the stored ones, then the ledger identities, K^2 and
 * adjunction for tracked classes are checked again.
 */
inline LedgerDocument parse_ledger_document(const Json& d) {
  if (d.value("schema_version", std::string()) != kSchemaVersion) {
    throw DomainError("ledger document: schema_version must be \"1\"");
  }
  LedgerDocument out;
  ManifoldLedger& m = out.ledger;
  LedgerFlags flags;
  const Json& sc = d.at("simply_connected");
  flags.simply_connected = sc.is_null() ? Connectivity::unknown : (sc.get<bool>() ? Connectivity::yes : Connectivity::no);
  flags.symplectic = d.at("symplectic").get<bool>();
  m = make_ledger(d.at("name").get<std::string>(), integer_from_json(d.at("e")), integer_from_json(d.at("sign")), flags);
  const bool stored_ok = m.b_plus == integer_from_json(d.at("b_plus")) &&
                         m.b_minus == integer_from_json(d.at("b_minus")) &&
                         m.chi_h == integer_from_json(d.at("chi_h")) && m.c1sq == integer_from_json(d.at("c1_sq"));
  if (!stored_ok) throw ConsistencyError("ledger document " + m.name + ": stored invariants violate the identities");
  if (d.contains("lattice") && !d.at("lattice").is_null()) {
    m.lattice = lattice_from_json(d.at("lattice"));
    if (!d.at("K").is_null()) m.K = class_from_json(m.lattice, d.at("K"));
  }
  for (const auto& js : d.at("surfaces")) {
    EmbeddedSurface s;
    s.label = js.at("label").get<std::string>();
    s.genus = integer_from_json(js.at("genus"));
    s.self_int = integer_from_json(js.at("self_int"));
    s.symplectic = js.at("symplectic").get<bool>();
    s.complement_simply_connected = js.at("complement_simply_connected").get<bool>();
    if (!js.at("coeffs").is_null()) {
      if (!m.lattice) throw DomainError("ledger document: surface " + s.label + " has a class but no lattice");
      s.cls = class_from_json(m.lattice, js.at("coeffs"));
    }
    m.surfaces.push_back(std::move(s));
  }
  m.provenance = d.at("provenance").get<std::vector<std::string>>();
  validate(m);
  out.checks = checks_from_json(d.at("checks"));
  return out;
}

inline Json report_to_json(const Report& r) {
  Json d;
  d["schema_version"] = kSchemaVersion;
  d["subject"] = r.subject;
  d["passed"] = r.passed();
  d["checks"] = checks_to_json(r.checks);
  return d;
}

inline Json recipe_to_json(const Recipe& r) {
  Json d;
  d["route"] = to_string(r.route);
  d[r.route == Route::construction2 ? "x" : "p"] = r.a;
  d["k"] = r.k;
  Json steps = Json::array();
  for (const auto& s : r.steps) steps.push_back(Json{{"op", s.op}, {"detail", s.detail}});
  d["steps"] = std::move(steps);
  d["expected"] = Json{{"chi_h", to_json(r.expected_chi_h)},
                       {"c1_sq", to_json(r.expected_c1sq)},
                       {"basic_classes_up_to_sign", r.expected_basic_classes}};
  return d;
}

inline Json sweep_to_json(long x_max, const std::vector<SweepRow>& rows) {
  Json d;
  d["schema_version"] = kSchemaVersion;
  d["x_max"] = x_max;
  long failures = 0;
  Json pts = Json::array();
  for (const auto& r : rows) {
    Json p{{"x", r.x}, {"c", r.c}, {"route", to_string(r.route)}, {"k", r.k}, {"theorem_T", r.theorem_T},
           {"status", r.pass ? "pass" : "fail"}};
    if (!r.pass) {
      p["detail"] = r.detail;
      ++failures;
    }
    pts.push_back(std::move(p));
  }
  d["points"] = std::move(pts);
  d["failures"] = failures;
  return d;
}

inline std::string sweep_table(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "x,c,route,k,theorem_T,status\n";
  for (const auto& r : rows) {
    os << r.x << ',' << r.c << ',' << to_string(r.route) << ',' << r.k << ',' << (r.theorem_T ? "yes" : "no") << ','
       << (r.pass ? "pass" : "fail") << '\n';
  }
  return os.str();
}

}  // namespace blowdown
