#include "nsd/schema.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "nsd/error.hpp"

namespace nsd {

namespace {

const Formula& need_phi(std::string_view schema, const SchemaParams& p) {
  if (!p.phi) throw SchemaParamError(std::string(schema) + ": missing formula parameter");
  return *p.phi;
}

const Formula& need_internal(std::string_view schema, const SchemaParams& p) {
  const Formula& f = need_phi(schema, p);
  if (!is_internal(f)) throw SchemaParamError(std::string(schema) + ": formula parameter must be internal");
  return f;
}

// A binder name not free in phi and not among `taken`.
std::string fresh_for(std::string_view base, const Formula& phi, std::vector<std::string> taken = {}) {
  return fresh_name(base, {&phi.free_vars()}, taken);
}

Term var(const std::string& x) { return Term::var(x); }

Formula eq_schema(bool universal, const SchemaParams& p) {
  const Formula& f = need_phi(universal ? "eq-forall" : "eq-exists", p);
  const std::string& x = p.x;
  Formula st = Formula::st(var(x));
  if (universal)
    return iff(Formula::forall_st(x, p.sigma, f), Formula::forall(x, p.sigma, Formula::imp(st, f)));
  return iff(Formula::exists_st(x, p.sigma, f), Formula::exists(x, p.sigma, Formula::conj(st, f)));
}

Formula tst_eq(const SchemaParams& p) {
  const std::string& x = p.x;
  const std::string y = p.y == x ? x + "'" : p.y;
  Formula body = Formula::imp(Formula::conj(Formula::st(var(x)), eq_formula(p.sigma, var(x), var(y))),
                              Formula::st(var(y)));
  return Formula::forall(x, p.sigma, Formula::forall(y, p.sigma, body));
}

Formula tst_closed(const SchemaParams& p) {
  if (!p.term) throw SchemaParamError("tst-closed: missing term parameter");
  if (!p.term->free_vars().empty()) throw SchemaParamError("tst-closed: term must be closed");
  infer_type({}, *p.term);
  return Formula::st(*p.term);
}

Formula tst_app(const SchemaParams& p) {
  const std::string& x = p.x;
  const std::string f = x == "f" ? "g" : "f";
  Formula body = Formula::imp(Formula::conj(Formula::st(var(f)), Formula::st(var(x))),
                              Formula::st(Term::app(var(f), var(x))));
  return Formula::forall(f, Type::arrow(p.sigma, p.tau), Formula::forall(x, p.sigma, body));
}

// Induction over x:N; `st` selects the external version.
Formula induction(bool st, const SchemaParams& p) {
  const Formula& f = st ? need_phi("ia-st", p) : need_internal("ia", p);
  const std::string& x = p.x;
  Formula base = substitute(f, x, Term::zero());
  Formula step = Formula::imp(f, substitute(f, x, Term::succ(var(x))));
  Formula premise = Formula::conj(base, Formula::quant(st ? FormulaKind::ForallSt : FormulaKind::Forall, x,
                                                       Type::nat(), step));
  return Formula::imp(premise,
                      Formula::quant(st ? FormulaKind::ForallSt : FormulaKind::Forall, x, Type::nat(), f));
}

Formula os0(const SchemaParams& p) {
  const Formula& f = need_internal("os0", p);
  const std::string& x = p.x;
  return Formula::imp(Formula::forall_st(x, Type::nat(), f),
                      Formula::exists(x, Type::nat(), Formula::conj(negate(Formula::st(var(x))), f)));
}

// Choice over n: the shared shape of csat, ac0-st, ac0-int and sat.
//   Q1 n:dom. Q2 x:cod. F -> Q3 f:dom -> cod. forallst n:dom. F[x := f n]
Formula choice(FormulaKind inner, FormulaKind outer, const std::string& n, const Type& dom, const std::string& x,
               const Type& cod, const Formula& f) {
  const std::string g = fresh_for("f", f, {n, x});
  Formula premise = Formula::forall_st(n, dom, Formula::quant(inner, x, cod, f));
  Formula concl = Formula::forall_st(n, dom, substitute(f, x, Term::app(var(g), var(n))));
  return Formula::imp(premise, Formula::quant(outer, g, Type::arrow(dom, cod), concl));
}

Formula idealization(const SchemaParams& p) {
  const Formula& f = need_internal("i", p);
  const std::string& x = p.x;
  const std::string& y = p.y;
  const std::string xs = fresh_for(x + "'", f, {x, y});
  Formula premise =
      Formula::forall_st(xs, Type::seq(p.sigma), Formula::exists(y, p.tau, forall_in(x, p.sigma, var(xs), f)));
  Formula concl = Formula::exists(y, p.tau, Formula::forall_st(x, p.sigma, f));
  return Formula::imp(premise, concl);
}

Formula hac_int(const SchemaParams& p) {
  const Formula& f = need_internal("hac-int", p);
  const std::string& x = p.x;
  const std::string& y = p.y;
  const std::string F = fresh_for("F", f, {x, y});
  Formula premise = Formula::forall_st(x, p.sigma, Formula::exists_st(y, p.tau, f));
  Formula concl = Formula::exists_st(
      F, Type::arrow(p.sigma, Type::seq(p.tau)),
      Formula::forall_st(x, p.sigma, exists_in(y, p.tau, Term::app(var(F), var(x)), f)));
  return Formula::imp(premise, concl);
}

Formula nptp(const SchemaParams& p) {
  const Formula& f = need_internal("nptp", p);
  const std::string& x = p.x;
  for (const auto& v : f.free_vars())
    if (v != x && std::find(p.params.begin(), p.params.end(), v) == p.params.end())
      throw SchemaParamError("nptp: free variable " + v + " is neither x nor a parameter");
  if (std::find(p.params.begin(), p.params.end(), x) != p.params.end())
    throw SchemaParamError("nptp: parameter list contains x");
  Formula out = Formula::imp(Formula::forall_st(x, Type::nat(), f), Formula::forall(x, Type::nat(), f));
  for (auto it = p.params.rbegin(); it != p.params.rend(); ++it) out = Formula::forall_st(*it, Type::nat(), out);
  return out;
}

Formula fac(const SchemaParams& p) {
  const Formula& f = need_internal("fac", p);
  const std::string& n = p.n;
  const std::string& x = p.x;
  const std::string s = fresh_for("s", f, {n, x});
  const std::string g = fresh_for("f", f, {n, x, s});
  Formula premise = forall_in(n, Type::nat(), var(s), Formula::exists(x, p.tau, f));
  Formula concl = Formula::exists(
      g, Type::arrow(Type::nat(), p.tau),
      forall_in(n, Type::nat(), var(s), substitute(f, x, Term::app(var(g), var(n)))));
  return Formula::forall(s, Type::seq(Type::nat()), Formula::imp(premise, concl));
}

using Builder = std::function<Formula(const SchemaParams&)>;

const std::map<std::string, Builder, std::less<>>& table() {
  static const std::map<std::string, Builder, std::less<>> t = {
      {"eq-forall", [](const SchemaParams& p) { return eq_schema(true, p); }},
      {"eq-exists", [](const SchemaParams& p) { return eq_schema(false, p); }},
      {"tst-eq", tst_eq},
      {"tst-closed", tst_closed},
      {"tst-app", tst_app},
      {"ia-st", [](const SchemaParams& p) { return induction(true, p); }},
      {"ia", [](const SchemaParams& p) { return induction(false, p); }},
      {"os0", os0},
      {"csat",
       [](const SchemaParams& p) {
         return choice(FormulaKind::Exists, FormulaKind::Exists, p.n, Type::nat(), p.x, p.sigma,
                       need_phi("csat", p));
       }},
      {"csat0",
       [](const SchemaParams& p) {
         return choice(FormulaKind::Exists, FormulaKind::Exists, p.n, Type::nat(), p.x, Type::nat(),
                       need_phi("csat0", p));
       }},
      {"i", idealization},
      {"hac-int", hac_int},
      {"ac0-st",
       [](const SchemaParams& p) {
         return choice(FormulaKind::ExistsSt, FormulaKind::ExistsSt, p.n, Type::nat(), p.x, p.sigma,
                       need_phi("ac0-st", p));
       }},
      {"ac0-int",
       [](const SchemaParams& p) {
         return choice(FormulaKind::ExistsSt, FormulaKind::ExistsSt, p.n, Type::nat(), p.x, p.sigma,
                       need_internal("ac0-int", p));
       }},
      {"sat",
       [](const SchemaParams& p) {
         return choice(FormulaKind::Exists, FormulaKind::Exists, p.x, p.sigma, p.y, p.tau, need_phi("sat", p));
       }},
      {"nptp", nptp},
      {"fac", fac},
  };
  return t;
}

}  // namespace

Formula axiom_instance(std::string_view schema, const SchemaParams& params) {
  auto it = table().find(schema);
  if (it == table().end()) throw SchemaParamError("unknown schema '" + std::string(schema) + "'");
  return it->second(params);
}

const std::vector<std::string>& schema_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [k, v] : table()) out.push_back(k);
    return out;
  }();
  return names;
}

}  // namespace nsd
