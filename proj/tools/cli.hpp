#pragma once

// Command-line frontend. `run` is separate from main so tests can drive it in-process.

#include <cstdint>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fermat3/fermat3.hpp"

namespace fermat3::cli {

enum ExitCode { kOk = 0, kFail = 1, kUsage = 2, kLimit = 3 };

struct Options {
  std::string field = "Q";
  std::string A = "1", B = "1", C = "1";
  std::string a, b, c;
  long p = 5;
  long sunit_bound = 4;
  std::optional<long> extra_prime_bound;
  std::int64_t work_cap = 0;
  long box_height = 2;
  int shards = 1;
  std::string theorem;
  std::string poly;
  std::string q;
  std::int64_t h_K = 1, h_Kzeta3 = 1;
  bool json = false;
};

/// Human summary lines plus the structured report.
struct Output {
  std::vector<std::string> lines;
  Json results = Json::object();
  std::vector<std::string> ledger;
  int code = kOk;

  void line(const std::string& s) { lines.push_back(s); }
};

inline AlgebraicNumber element_arg(const Field& K, const std::string& name, const std::string& text) {
  if (text.empty()) fail(ErrorKind::InvalidArgument, "missing --" + name);
  return AlgebraicNumber::parse(K, text);
}

inline void field_info(const Options& o, Output& r) {
  Field K = Field::parse(o.field);
  r.results["d"] = K.d();
  r.results["degree"] = K.degree();
  r.results["discriminant"] = to_json(K.discriminant());
  r.results["basis"] = K.basis_description();
  r.line("field " + K.spec() + ", degree " + std::to_string(K.degree()) + ", discriminant " + K.discriminant().get_str());
  r.line(K.basis_description());
  if (!K.is_rational()) {
    r.results["omega_minimal_polynomial"] = IntPolynomial(std::vector<BigInt>{K.omega_norm(), BigInt(-K.omega_trace()), BigInt(1)}).to_string('w');
  }
  if (K.is_real() && !K.is_rational()) {
    AlgebraicNumber eps = fundamental_unit(K);
    r.results["fundamental_unit"] = to_json(eps);
    r.results["fundamental_unit_norm"] = to_json(BigInt(eps.norm().get_num()));
    r.line("fundamental unit " + eps.to_string() + " (norm " + eps.norm().get_str() + ")");
  }
  auto split = splitting_type(K, 3);
  Json primes = Json::array();
  for (const auto& P : split.primes) primes.push_back(P.to_string());
  r.results["three_splitting"] = to_string(split.kind);
  r.results["primes_above_3"] = primes;
  r.line("3 is " + to_string(split.kind) + ": " + primes.dump());
  ClassGroupData cl = class_group(K);
  r.results["class_number"] = cl.h();
  r.line("class number " + std::to_string(cl.h()));
}

inline void class_group_cmd(const Options& o, Output& r) {
  Field K = Field::parse(o.field);
  ClassGroup G(K);
  ClassGroupData cl = G.data();
  r.results["class_group"] = to_json(cl);
  std::string inv;
  for (auto d : cl.divisors) inv += (inv.empty() ? "" : " x ") + ("Z/" + std::to_string(d));
  r.line("Cl(" + K.spec() + ") = " + (inv.empty() ? "1" : inv) + ", order " + std::to_string(cl.h()));
  auto SK = primes_above(K, 3);
  ClassGroupData s = G.s_class_group(SK);
  r.results["s_class_group"] = to_json(s);
  r.line("Cl_S(K) for S = primes over 3: order " + std::to_string(s.h()));
  if (K.is_real() && !K.is_rational()) {
    auto z = h3_divisibility_of_Kzeta3(K);
    r.results["kzeta3"] = Json{{"divisible_by_3", z.divisible},
                               {"h_K", z.h_K},
                               {"h_minus_3d", z.h_minus_3d},
                               {"minus_3d_field", z.minus_3d_field.spec()},
                               {"reduction", z.reduction}};
    r.line(std::string("3 | h(K(zeta3)): ") + (z.divisible ? "yes" : "no") + " (" + z.reduction + ")");
  }
}

inline SolverConfig solver_config(const Options& o) {
  SolverConfig cfg;
  cfg.bound = o.sunit_bound;
  cfg.extra_prime_bound = o.extra_prime_bound;
  if (o.work_cap > 0) cfg.work_cap = o.work_cap;
  return cfg;
}

inline void sunit_solve(const Options& o, Output& r) {
  Field K = Field::parse(o.field);
  AlgebraicNumber A = element_arg(K, "A", o.A), B = element_arg(K, "B", o.B), C = element_arg(K, "C", o.C);
  auto SK = primes_above(K, 3);
  auto S = primes_dividing(K, {AlgebraicNumber(K, 3), A, B, C});
  SUnitBasis basis(K, S);
  SolverConfig cfg = solver_config(o);
  auto sols = solve_cube_sum(basis, solver_box(basis, SK, cfg.bound, cfg.extra_prime_bound.value_or(cfg.bound)), cfg.work_cap);
  Json primes = Json::array();
  for (const auto& P : S) primes.push_back(P.to_string());
  r.results["S"] = primes;
  r.results["basis"] = basis.describe();
  r.results["bound"] = sols.bound;
  Json classes = Json::array();
  for (const auto& t : sols.classes) classes.push_back(to_json(t));
  r.results["classes"] = classes;
  auto t1 = check_condition_T1(sols.classes, SK);
  auto ck = check_condition_K(sols.classes, SK.front());
  r.results["condition_T1"] = t1.holds;
  r.results["condition_K"] = ck.holds;
  r.line("S = " + primes.dump() + ", exponent bound " + std::to_string(sols.bound));
  for (const auto& d : basis.describe()) r.line("  " + d);
  r.line(std::to_string(sols.classes.size()) + " solution classes");
  for (const auto& t : sols.classes)
    r.line("  (" + t.alpha.to_string() + ", " + t.beta.to_string() + ", " + t.gamma.to_string() + ")");
  r.line(std::string("condition T1: ") + (t1.holds ? "holds" : "fails") + "; condition K: " + (ck.holds ? "holds" : "fails"));
  r.ledger.push_back("solver completeness at bound " + std::to_string(sols.bound));
}

inline void frey_cmd(const Options& o, Output& r) {
  Field K = Field::parse(o.field);
  FreyParams f{element_arg(K, "A", o.A), element_arg(K, "B", o.B), element_arg(K, "C", o.C),
               element_arg(K, "a", o.a), element_arg(K, "b", o.b), element_arg(K, "c", o.c), o.p};
  WeierstrassInvariants w = frey_model(f);
  r.results["model"] = to_json(w);
  r.line("E: Y^2 + (" + w.a1.to_string() + ") XY + (" + w.a3.to_string() + ") Y = X^3");
  r.line("c4 = " + w.c4.to_string() + ", c6 = " + w.c6.to_string());
  r.line("Delta = " + w.delta.to_string() + ", j = " + w.j.to_string());
  if (!f.a.is_zero()) {
    AlgebraicNumber mu = mu_of(f);
    r.results["mu"] = to_json(mu);
    if (!mu.is_zero()) {
      r.results["j_from_mu"] = to_json(j_from_mu(mu));
      r.line("mu = " + mu.to_string() + ", j(mu) = " + j_from_mu(mu).to_string());
    }
  }
  AlgebraicNumber bad = AlgebraicNumber(K, 3) * f.A * f.B * f.C;
  std::vector<PrimeIdeal> primes = prime_support(w.delta);
  for (const auto& P : primes_above(K, 3)) {
    if (std::find(primes.begin(), primes.end(), P) == primes.end()) primes.push_back(P);
  }
  std::sort(primes.begin(), primes.end());
  Json rows = Json::array();
  for (const auto& P : primes) {
    Json row{{"prime", P.to_string()}, {"v_delta", P.valuation(w.delta)}, {"conductor_exponent_bound", conductor_exponent_bound(P)}};
    std::string text = P.to_string() + ": v(Delta) = " + std::to_string(P.valuation(w.delta));
    try {
      if (P.valuation(bad) == 0) {
        auto v = classify_away_from_Sprime(f, P);
        row["verdict"] = to_json(v);
        text += ", " + to_string(v.kind) + ", v_delta = " + v.v_delta.to_string();
      } else if (P.p() == 3) {
        auto v = classify_at_3_over_K(f, P);
        row["verdict"] = to_json(v);
        text += ", " + to_string(v.kind) + ", inertia " + to_string(v.inertia_claim) + ", v_j = " + v.v_j.to_string();
      } else {
        text += ", r_P <= " + std::to_string(conductor_exponent_bound(P));
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::HypothesisViolated && e.kind() != ErrorKind::PreconditionViolated) throw;
      row["not_applicable"] = e.what();
      text += ", r_P <= " + std::to_string(conductor_exponent_bound(P)) + " (" + e.what() + ")";
    }
    rows.push_back(row);
    r.line(text);
  }
  r.results["primes"] = rows;
}

inline void check_cmd(const Options& o, Output& r) {
  Verdict v;
  if (o.theorem == "local-odd") {
    OddDegreeInputs in;
    if (o.poly.empty()) fail(ErrorKind::InvalidArgument, "missing --poly");
    if (o.q.empty()) fail(ErrorKind::InvalidArgument, "missing --q");
    in.f = parse_polynomial(o.poly);
    in.q = BigInt(o.q);
    in.h_K = o.h_K;
    in.h_Kzeta3 = o.h_Kzeta3;
    Field Q = Field::rational();
    auto shape = [&](const std::string& name, const std::string& text) {
      AlgebraicNumber x = element_arg(Q, name, text);
      if (!x.is_integral()) fail(ErrorKind::InvalidArgument, "--" + name + " must be a rational integer");
      return integer_is_unit_times_power_of_3(BigInt(x.x().get_num()));
    };
    in.A_shape = shape("A", o.A);
    in.B_shape = shape("B", o.B);
    in.C_shape = shape("C", o.C);
    v = check_local_odd_degree(in);
  } else {
    Field K = Field::parse(o.field);
    AlgebraicNumber A = element_arg(K, "A", o.A), B = element_arg(K, "B", o.B), C = element_arg(K, "C", o.C);
    SolverConfig cfg = solver_config(o);
    if (o.theorem == "wk") v = check_theorem_WK(K, A, B, C, cfg);
    else if (o.theorem == "prop2") v = check_prop_main2(K, A, B, C, cfg);
    else if (o.theorem == "overk") v = check_theorem_K(K, A, B, C, cfg);
    else if (o.theorem == "local-quad") {
      if (K.is_rational()) fail(ErrorKind::InvalidArgument, "local-quad needs --field Q(sqrt d)");
      v = check_local_quadratic(K.d(), A, B, C);
    } else {
      fail(ErrorKind::InvalidArgument, "unknown theorem '" + o.theorem + "'");
    }
  }
  r.results["verdict"] = to_json(v);
  r.ledger = v.ledger;
  r.line("theorem " + v.theorem + ": " + to_string(v.overall));
  for (const auto& c : v.clauses) r.line("  [" + to_string(c.status) + "] " + c.name + ": " + c.detail);
  r.line("  explicit p bound: " + std::to_string(v.explicit_p_bound));
  if (v.witness) r.line("  witness: " + detail::triple_text(*v.witness));
  r.code = v.accepted() ? kOk : kFail;
}

inline void search_cmd(const Options& o, Output& r) {
  Field K = Field::parse(o.field);
  Equation eq{K, element_arg(K, "A", o.A), element_arg(K, "B", o.B), element_arg(K, "C", o.C), o.p};
  auto recs = o.work_cap > 0 ? enumerate_solutions(eq, o.box_height, o.shards, o.work_cap)
                             : enumerate_solutions(eq, o.box_height, o.shards);
  Json list = Json::array();
  long nontrivial_primitive = 0;
  for (const auto& s : recs) {
    list.push_back(to_json(s));
    if (s.primitive && !s.trivial) ++nontrivial_primitive;
  }
  r.results["solutions"] = list;
  r.results["nontrivial_primitive"] = nontrivial_primitive;
  r.results["box_height"] = o.box_height;
  std::istringstream fixture(fixture_text(eq, o.box_height, recs));
  for (std::string s; std::getline(fixture, s);) r.line(s);
  r.line(std::to_string(recs.size()) + " solutions, " + std::to_string(nontrivial_primitive) + " nontrivial primitive");
  r.ledger.push_back("search is complete only inside the coordinate box of height " + std::to_string(o.box_height));
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations for A x^p + B y^p = C z^3 over Q and quadratic fields", "fermat3"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Options o;
  auto field_opt = [&](CLI::App* s) { s->add_option("--field", o.field, "Q or Q(sqrt D)"); };
  auto coeff_opts = [&](CLI::App* s) {
    s->add_option("--A", o.A, "coefficient A (x + y*w syntax)");
    s->add_option("--B", o.B, "coefficient B");
    s->add_option("--C", o.C, "coefficient C");
  };
  auto solver_opts = [&](CLI::App* s) {
    s->add_option("--sunit-bound", o.sunit_bound, "S-unit exponent bound")->check(CLI::PositiveNumber);
    s->add_option("--extra-prime-bound", o.extra_prime_bound, "exponent bound for primes of S' outside S_K")->check(CLI::PositiveNumber);
    s->add_option("--work-cap", o.work_cap, "work cap (candidates)")->check(CLI::PositiveNumber);
  };
  std::vector<CLI::App*> subs;
  auto* fi = app.add_subcommand("field-info", "integral basis, units, splitting of 3, class number");
  field_opt(fi);
  auto* cg = app.add_subcommand("class-group", "class group, S-class group and 3 | h(K(zeta3))");
  field_opt(cg);
  auto* su = app.add_subcommand("sunit-solve", "classes of alpha + beta = gamma^3 in S'-units");
  field_opt(su);
  coeff_opts(su);
  solver_opts(su);
  auto* fr = app.add_subcommand("frey", "Frey curve invariants and reduction data");
  field_opt(fr);
  coeff_opts(fr);
  fr->add_option("--a", o.a)->required();
  fr->add_option("--b", o.b)->required();
  fr->add_option("--c", o.c)->required();
  fr->add_option("--p", o.p, "prime exponent >= 5");
  auto* ck = app.add_subcommand("check", "theorem hypothesis checker");
  ck->add_option("--theorem", o.theorem)->required()->check(CLI::IsMember({"wk", "prop2", "overk", "local-quad", "local-odd"}));
  field_opt(ck);
  coeff_opts(ck);
  solver_opts(ck);
  ck->add_option("--poly", o.poly, "defining polynomial (local-odd)");
  ck->add_option("--q", o.q, "auxiliary prime q (local-odd)");
  ck->add_option("--h-K", o.h_K, "class number of K (local-odd, user-supplied)");
  ck->add_option("--h-Kzeta3", o.h_Kzeta3, "class number of K(zeta3) (local-odd, user-supplied)");
  auto* se = app.add_subcommand("search", "exhaustive search over a coordinate box");
  field_opt(se);
  coeff_opts(se);
  se->add_option("--p", o.p, "prime exponent");
  se->add_option("--box-height", o.box_height, "coordinate bound H")->check(CLI::PositiveNumber);
  se->add_option("--shards", o.shards, "worker threads")->check(CLI::PositiveNumber);
  se->add_option("--work-cap", o.work_cap, "work cap (candidate pairs)")->check(CLI::PositiveNumber);
  for (auto* s : {fi, cg, su, fr, ck, se}) s->add_flag("--json", o.json, "structured report on standard output");
  app.add_flag("--json", o.json, "structured report on standard output");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  Output result;
  try {
    if (sub == fi) field_info(o, result);
    else if (sub == cg) class_group_cmd(o, result);
    else if (sub == su) sunit_solve(o, result);
    else if (sub == fr) frey_cmd(o, result);
    else if (sub == ck) check_cmd(o, result);
    else search_cmd(o, result);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::LimitExceeded ? kLimit : kUsage;
  }

  Json inputs{{"field", o.field}};
  if (sub != fi && sub != cg) {
    inputs["A"] = o.A;
    inputs["B"] = o.B;
    inputs["C"] = o.C;
  }
  if (sub == fr) {
    inputs["a"] = o.a;
    inputs["b"] = o.b;
    inputs["c"] = o.c;
    inputs["p"] = o.p;
  }
  if (sub == se) {
    inputs["p"] = o.p;
    inputs["box_height"] = o.box_height;
  }
  if (sub == su || sub == ck) inputs["sunit_bound"] = o.sunit_bound;
  if (sub == ck) {
    inputs["theorem"] = o.theorem;
    if (o.theorem == "local-odd") {
      inputs.erase("field");
      inputs["poly"] = o.poly;
      inputs["q"] = o.q;
      inputs["h_K"] = o.h_K;
      inputs["h_Kzeta3"] = o.h_Kzeta3;
    }
  }
  Json report{{"command", sub->get_name()},
              {"inputs", inputs},
              {"results", result.results},
              {"ledger", result.ledger},
              {"version", kVersion}};
  if (!(sub == ck && o.theorem == "local-odd")) report["field"] = o.field;

  std::ostream& human = o.json ? err : out;
  for (const auto& l : result.lines) human << l << "\n";
  if (o.json) out << report.dump(2) << "\n";
  return result.code;
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace fermat3::cli
