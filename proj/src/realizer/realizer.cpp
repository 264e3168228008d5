#include "nsd/realizer.hpp"

#include <algorithm>

#include "nsd/checker.hpp"
#include "nsd/error.hpp"
#include "nsd/machine.hpp"
#include "nsd/prelude.hpp"
#include "nsd/star.hpp"

namespace nsd {

namespace {

const Type N = Type::nat();

Term var(const std::string& x) { return Term::var(x); }
Term app(const Term& f, const Term& a) { return Term::app(f, a); }
Term app(const Term& f, const Term& a, const Term& b) { return Term::app(Term::app(f, a), b); }

// Closed T-term deciding equality at `t` (0 iff equal).
Term equality_at(const Type& t) {
  if (t.is_nat()) return prelude::eq();
  if (t == Type::seq(N)) return prelude::seq_eq();
  throw UnsupportedType("no decidable equality at type " + t.str());
}

std::vector<Term> components(const Term& s, std::uint64_t fuel) {
  auto elems = as_seq_literal(normalize(s, fuel));
  if (!elems) throw ShapeError("sequence does not normalize to a literal: " + s.str());
  return *elems;
}

std::uint64_t nat_value(const Term& t, std::uint64_t fuel) { return Machine(fuel).eval_nat(t); }

}  // namespace

WitnessFinder WitnessFinder::least(std::uint64_t bound, std::function<bool(std::uint64_t, std::uint64_t)> psi) {
  WitnessFinder w;
  w.type = N;
  w.bound = bound;
  w.find = [bound, psi = std::move(psi)](const Term& a) -> std::optional<Term> {
    auto n = as_numeral(a);
    if (!n) throw ShapeError("numeral component expected, got " + a.str());
    for (std::uint64_t x = 0; x <= bound; ++x)
      if (psi(*n, x)) return Term::numeral(x);
    return std::nullopt;
  };
  return w;
}

WitnessFinder WitnessFinder::from_table(const FiniteRelationTable& r) {
  return least(r.cols() == 0 ? 0 : r.cols() - 1, [r](std::uint64_t n, std::uint64_t x) { return r(n, x); });
}

FacBuilder::FacBuilder(Type component, WitnessFinder finder, std::uint64_t fuel)
    : component_(std::move(component)), finder_(std::move(finder)), fuel_(fuel),
      f_(Term::lam("m", component_, zero_term(finder_.type))) {
  equality_at(component_);
}

const FacBuilder::Step& FacBuilder::push(const Term& entry) {
  Term a = normalize(entry, fuel_);
  Step step{a, false, std::nullopt};
  step.duplicate = std::any_of(seen_.begin(), seen_.end(), [&](const Term& b) { return alpha_equal(a, b); });
  if (!step.duplicate) {
    step.witness = finder_.find(a);
    if (!step.witness) {
      if (auto n = as_numeral(a)) throw WitnessNotFound(*n);
      throw WitnessNotFound(a.str(), steps_.size());
    }
    // f(m) = (m = a ? x : f0(m))
    Term m = var("m");
    f_ = Term::lam("m", component_,
                   prelude::ifz(app(equality_at(component_), m, a), *step.witness, app(f_, m), finder_.type));
    seen_.push_back(a);
  }
  steps_.push_back(std::move(step));
  return steps_.back();
}

FacResult fac_choice_traced(const Term& s, const WitnessFinder& finder, std::uint64_t fuel) {
  Type st = infer_type({}, s);
  if (!st.is_seq()) throw TypeError(TypeErrorKind::ArgumentMismatch, s.str(), "finite choice needs a sequence");
  FacBuilder b(st.element(), finder, fuel);
  for (const auto& a : components(s, fuel)) b.push(a);
  return {b.f(), b.steps()};
}

Term fac_choice(const Term& s, const WitnessFinder& finder, std::uint64_t fuel) {
  return fac_choice_traced(s, finder, fuel).f;
}

bool eq_decider_from_fac(const Term& a, const Term& b, std::uint64_t fuel) {
  Type t = infer_type({}, a);
  Type tb = infer_type({}, b);
  if (!(t == tb)) throw TypeError(TypeErrorKind::ArgumentMismatch, b.str(), "operands have different types");
  Term E = equality_at(t);
  const std::vector<Term> s = {a, b};
  // psi(x, n) := x = s_n, witnessed by the least such n.
  WitnessFinder finder;
  finder.type = N;
  finder.bound = 1;
  finder.find = [&](const Term& x) -> std::optional<Term> {
    for (std::uint64_t n = 0; n < s.size(); ++n)
      if (nat_value(app(E, x, s[n]), fuel) == 0) return Term::numeral(n);
    return std::nullopt;
  };
  Term f = fac_choice(Term::seq_literal(t, s), finder, fuel);
  return nat_value(app(f, a), fuel) == nat_value(app(f, b), fuel);
}

RealizerBundle csat_realizers(const NormalForm& inner, const std::string& n, const std::string& x,
                              const std::vector<std::string>& params) {
  for (const auto& [u, t] : inner.evars)
    if (!t.is_seq()) throw ShapeError("existential variable " + u + " is not of sequence type");
  for (const auto& v : inner.matrix.free_vars()) {
    auto in = [&](const VarList& vs) {
      return std::any_of(vs.begin(), vs.end(), [&](const auto& p) { return p.first == v; });
    };
    if (v == n || v == x || in(inner.evars) || in(inner.uvars)) continue;
    if (std::find(params.begin(), params.end(), v) != params.end()) continue;
    throw ShapeError("matrix has free variable " + v + " besides " + n + ", " + x + " and its own tuples");
  }
  VarList Us, all;
  for (std::size_t i = 0; i < inner.evars.size(); ++i)
    Us.emplace_back("U" + std::to_string(i + 1), Type::seq(Type::arrow(N, inner.evars[i].second)));
  all = Us;
  all.emplace_back("s", Type::seq(N));
  VarList ws;
  for (std::size_t j = 0; j < inner.uvars.size(); ++j)
    ws.emplace_back("w" + std::to_string(j + 1), Type::seq(inner.uvars[j].second));
  all.insert(all.end(), ws.begin(), ws.end());

  RealizerBundle out;
  TypingContext uctx;
  for (const auto& [u, t] : Us) uctx.declare(u, t);
  for (const auto& [u, t] : Us) {
    Term body = big_lambda(uctx, "m", N, bounded_apply(uctx.with("m", N), var(u), var("m")));
    out.push_back(big_lambda({}, Us, body));
  }
  out.push_back(big_lambda({}, all, var("s")));
  for (const auto& [w, t] : ws) out.push_back(big_lambda({}, all, Term::singleton(t, var(w))));
  return out;
}

Formula ac0_matrix(const Ac0Instance& inst) {
  Term Vnu = app(inst.V, var("n"), var("u"));
  return forall_in("u", N, inst.t, exists_in("v", N, Vnu, inst.phi));
}

Term csat_witness_from_ac0(const Ac0Instance& inst) {
  const Formula psi = ac0_matrix(inst);
  Instance ci;
  ci.sig = inst.sig;
  ci.fuel = inst.fuel;
  WitnessFinder finder;
  finder.type = N;
  finder.bound = inst.bound;
  finder.find = [&](const Term& a) -> std::optional<Term> {
    for (std::uint64_t x = 0; x <= inst.bound; ++x) {
      Substitution sub{{"n", a}, {"x", Term::numeral(x)}};
      EvalResult r = eval_internal(substitute(psi, sub), {}, ci);
      if (r.value == Truth::True) return Term::numeral(x);
    }
    return std::nullopt;
  };
  return fac_choice(inst.s, finder, inst.fuel);
}

Term standardize_choice(const Term& g, std::uint64_t k, std::uint64_t fuel) {
  Type gt = infer_type({}, g);
  if (!gt.is_arrow() || !gt.domain().is_nat())
    throw TypeError(TypeErrorKind::ArgumentMismatch, g.str(), "expected a function on N");
  const Type& out = gt.codomain();
  std::vector<Term> table;
  for (std::uint64_t i = 0; i <= k; ++i) table.push_back(normalize(app(g, Term::numeral(i)), fuel));
  return Term::lam("n", N, Term::get(Term::seq_literal(out, table), var("n"), zero_term(out)));
}

Term table_term(const FiniteRelationTable& r) {
  std::vector<Term> rows;
  for (std::size_t n = 0; n < r.rows(); ++n) {
    std::vector<Term> row;
    for (std::size_t x = 0; x < r.cols(); ++x) row.push_back(Term::numeral(r(n, x) ? 0 : 1));
    rows.push_back(Term::seq_literal(N, row));
  }
  Term T = Term::seq_literal(Type::seq(N), rows);
  return Term::lam("n", N,
                   Term::lam("x", N, Term::get(Term::get(T, var("n"), Term::empty_seq(N)), var("x"), Term::numeral(1))));
}

BarRecDemo br_countable_choice(const FiniteRelationTable& r, std::uint64_t k, std::uint64_t fuel) {
  for (std::uint64_t n = 0; n <= k; ++n)
    if (!r.least_witness(n)) throw NoWitnessInRow(n);
  const Term R = table_term(r);
  const Term monus = prelude::monus();
  const Type NN = Type::arrow(N, N);
  const Type Ns = Type::seq(N);

  // Least x < cols with r(row, x).
  auto least_in_row = [&](const Term& row) {
    const std::uint64_t c = r.cols();
    Term xi = app(monus, Term::numeral(c - 1), var("m"));
    Term step = Term::lam("m", N, Term::lam("acc", N, prelude::ifz(app(R, row, xi), xi, var("acc"), N)));
    return Term::nat_rec(Term::numeral(c), step, Term::numeral(c));
  };

  // Y a: least i <= k where a i is not a witness, else k.
  Term i = app(monus, Term::numeral(k), var("m"));
  Term ystep =
      Term::lam("m", N, Term::lam("acc", N, prelude::ifz(app(R, i, app(var("a"), i)), var("acc"), i, N)));
  Term Y = Term::lam("a", NN, Term::nat_rec(Term::numeral(k), ystep, Term::numeral(k + 1)));
  Term G = Term::lam("s", Ns, var("s"));
  Term H = Term::lam("s", Ns, Term::lam("p", Type::arrow(N, Ns), app(var("p"), least_in_row(Term::len(var("s"))))));

  BarRecDemo d{Y, G, H, spector_br(Y, G, H, Term::empty_seq(N), fuel), {}};
  d.f = Term::lam("n", N, Term::get(d.prefix, var("n"), Term::zero()));
  return d;
}

Term br_countable_choice_demo(const FiniteRelationTable& r, std::uint64_t k, std::uint64_t fuel) {
  return br_countable_choice(r, k, fuel).f;
}

Term char_sequence(const Term& f, std::uint64_t k, std::uint64_t fuel) {
  Type ft = infer_type({}, f);
  if (!(ft == Type::arrow(N, N))) throw TypeError(TypeErrorKind::ArgumentMismatch, f.str(), "expected N -> N");
  std::vector<Term> in;
  Machine m(fuel);
  for (std::uint64_t n = 0; n <= k; ++n)
    if (m.eval_nat(app(f, Term::numeral(n))) == 0) in.push_back(Term::numeral(n));
  return Term::seq_literal(N, in);
}

}  // namespace nsd
