#pragma once

// JSON rendering of library results. Keys are sorted (nlohmann::json objects are ordered
// maps) and every number is exact: integers, or strings for rationals and field elements.

#include <string>
#include <vector>

#include <json.hpp>

#include "fermat3/classgroup.hpp"
#include "fermat3/criteria.hpp"
#include "fermat3/field.hpp"
#include "fermat3/frey.hpp"
#include "fermat3/harness.hpp"
#include "fermat3/sunits.hpp"

namespace fermat3 {

using Json = nlohmann::json;

inline constexpr const char* kVersion = "fermat3 0.1.0";

inline Json to_json(const BigInt& n) {
  if (n.fits_slong_p()) return n.get_si();
  return n.get_str();
}

inline Json to_json(const AlgebraicNumber& x) { return x.to_string(); }

inline Json to_json(const LinearInP& f) { return Json{{"constant", f.constant}, {"p_coefficient", f.p_coefficient}, {"text", f.to_string()}}; }

inline Json to_json(const std::vector<long>& v) {
  Json out = Json::array();
  for (long x : v) out.push_back(x);
  return out;
}

inline Json to_json(const SUnitTriple& t) {
  return Json{{"alpha", to_json(t.alpha)},
              {"beta", to_json(t.beta)},
              {"gamma", to_json(t.gamma)},
              {"alpha_exponents", to_json(t.alpha_exponents)},
              {"beta_exponents", to_json(t.beta_exponents)}};
}

inline Json to_json(const Verdict& v) {
  Json clauses = Json::array();
  for (const auto& c : v.clauses) clauses.push_back(Json{{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}});
  Json out{{"theorem", v.theorem},
           {"clauses", clauses},
           {"explicit_p_bound", v.explicit_p_bound},
           {"overall", to_string(v.overall)},
           {"ledger", v.ledger}};
  if (v.witness) out["witness"] = to_json(*v.witness);
  if (!v.satisfied_at.empty()) out["satisfied_at"] = v.satisfied_at;
  return out;
}

inline Json to_json(const WeierstrassInvariants& w) {
  return Json{{"a1", to_json(w.a1)}, {"a2", "0"}, {"a3", to_json(w.a3)}, {"a4", "0"}, {"a6", "0"},
              {"b2", to_json(w.b2)}, {"b4", to_json(w.b4)}, {"b6", to_json(w.b6)}, {"b8", to_json(w.b8)},
              {"c4", to_json(w.c4)}, {"c6", to_json(w.c6)}, {"delta", to_json(w.delta)}, {"j", to_json(w.j)}};
}

inline Json to_json(const ReductionVerdict& r) {
  return Json{{"prime", r.prime.to_string()},
              {"kind", to_string(r.kind)},
              {"inertia_claim", to_string(r.inertia_claim)},
              {"v_delta", to_json(r.v_delta)},
              {"v_j", to_json(r.v_j)}};
}

inline Json to_json(const ClassGroupData& g) {
  Json gens = Json::array();
  for (const auto& I : g.generators) gens.push_back(I.to_string());
  return Json{{"order", g.h()}, {"invariants", g.divisors}, {"generators", gens}, {"has_3_torsion", g.has_3_torsion}};
}

inline Json to_json(const SolutionRecord& r) {
  return Json{{"a", to_json(r.a)},
              {"b", to_json(r.b)},
              {"c", to_json(r.c)},
              {"trivial", r.trivial},
              {"primitive", r.primitive},
              {"in_W_K", r.in_W_K},
              {"in_exceptional_S", r.in_exceptional_S}};
}

}  // namespace fermat3
