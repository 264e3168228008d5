#include <doctest.h>

#include <algorithm>

#include "nsd/checker.hpp"
#include "nsd/dialectica.hpp"
#include "nsd/error.hpp"
#include "nsd/formula_parse.hpp"
#include "nsd/parse.hpp"
#include "support/gen.hpp"

using namespace nsd;

namespace {

const Type N = Type::nat();

Term v(const std::string& x) { return Term::var(x); }

Formula fml(std::string_view src, const TypingContext& ctx = {}) {
  return parse_formula(src, Signature::standard(), ctx);
}

std::vector<Type> types_of(const VarList& vs) {
  std::vector<Type> out;
  for (const auto& [x, t] : vs) out.push_back(t);
  return out;
}

TypingContext extend(TypingContext ctx, const NormalForm& nf) {
  for (const auto& [x, t] : nf.evars) ctx.declare(x, t);
  for (const auto& [x, t] : nf.uvars) ctx.declare(x, t);
  return ctx;
}

bool has_name(const VarList& vs, const std::string& x) {
  return std::any_of(vs.begin(), vs.end(), [&](const auto& p) { return p.first == x; });
}

}  // namespace

TEST_CASE("internal formulas translate to themselves") {
  gen::Rng rng(31);
  for (int i = 0; i < 300; ++i) {
    gen::FormulaGen g(rng, {.external = false});
    Formula f = g.formula(gen::pick(rng, 0, 4));
    NormalForm nf = dst(f);
    CHECK(nf.evars.empty());
    CHECK(nf.uvars.empty());
    CHECK_MESSAGE(alpha_equal(nf.matrix, f), f.str());
  }
}

TEST_CASE("normal form invariants on external formulas") {
  gen::Rng rng(32);
  for (int i = 0; i < 300; ++i) {
    gen::FormulaGen g(rng, {.external = true, .max_order = 2});
    Formula f = g.formula(gen::pick(rng, 1, 4));
    NormalForm nf = dst(f);
    INFO(f.str());
    for (const auto& [x, t] : nf.evars) CHECK(t.is_seq());
    CHECK(is_internal(nf.matrix));
    for (const auto& x : nf.matrix.free_vars())
      CHECK((has_name(nf.evars, x) || has_name(nf.uvars, x) || f.has_free(x)));
    CHECK_NOTHROW(check_formula(Signature::standard(), extend({}, nf), nf.matrix));
    CHECK(dst(f).str() == nf.str());
  }
}

TEST_CASE("standardness predicate") {
  TypingContext ctx{{"u", N}};
  NormalForm nf = dst(fml("st(u)", ctx), ctx);
  REQUIRE(nf.evars.size() == 1);
  CHECK(nf.uvars.empty());
  CHECK(nf.evars[0].second == Type::seq(N));
  CHECK(alpha_equal(nf.matrix, mem_formula(N, v("u"), v(nf.evars[0].first))));

  TypingContext fctx{{"g", Type::arrow(N, N)}};
  NormalForm nf2 = dst(fml("st(g)", fctx), fctx);
  CHECK(nf2.evars[0].second == Type::seq(Type::arrow(N, N)));
}

TEST_CASE("implication between standardness predicates") {
  TypingContext ctx{{"u", N}};
  NormalForm nf = dst(fml("st(u) -> st(u)", ctx), ctx);
  // Premise gives x: N*, conclusion x': N*, so U : (N* -> N*)* and the
  // premise's evar becomes universal. No Y-block: the premise has no uvars.
  REQUIRE(nf.evars.size() == 1);
  REQUIRE(nf.uvars.size() == 1);
  const auto& [U, Ut] = nf.evars[0];
  const auto& [x, xt] = nf.uvars[0];
  CHECK(Ut == Type::seq(Type::arrow(Type::seq(N), Type::seq(N))));
  CHECK(xt == Type::seq(N));
  Formula expect = Formula::imp(mem_formula(N, v("u"), v(x)), mem_formula(N, v("u"), Term::star(v(U), {v(x)})));
  CHECK(alpha_equal(nf.matrix, expect));
  CHECK(nf.str() == "EXISTS-ST [U3:(N* -> N*)*] FORALL-ST [x2:N*] MATRIX u in x2 -> u in U3[x2]");
}

TEST_CASE("implication with universal premise variables") {
  // (forallst z. st(z)) -> false: premise evars X : (N -> N*)*, uvars z.
  NormalForm nf = dst(fml("(forallst z:N. st(z)) -> false"));
  REQUIRE(nf.evars.size() == 1);
  CHECK(nf.evars[0].first[0] == 'Y');
  // Y : (X-type -> N*)*, a sequence of candidates for z.
  CHECK(nf.evars[0].second == Type::seq(Type::arrow(Type::seq(Type::arrow(N, Type::seq(N))), Type::seq(N))));
  REQUIRE(nf.uvars.size() == 1);
  CHECK(nf.uvars[0].second == Type::seq(Type::arrow(N, Type::seq(N))));
  CHECK(is_internal(nf.matrix));
}

TEST_CASE("quantifier clauses") {
  // forall z: internal quantifier in front.
  NormalForm a = dst(fml("forall z:N. st(z)"));
  CHECK(a.matrix.kind() == FormulaKind::Forall);
  CHECK(a.evars.size() == 1);

  // exists z over an inner universal block: the block becomes sequences.
  NormalForm b = dst(fml("exists z:N. forallst w:N. z = w"));
  REQUIRE(b.uvars.size() == 1);
  CHECK(b.uvars[0].second == Type::seq(N));
  CHECK(b.matrix.kind() == FormulaKind::Exists);
  auto inner = match_forall_in(b.matrix.child(0));
  REQUIRE(inner);
  CHECK(alpha_equal(inner->seq, v(b.uvars[0].first)));

  // forallst z: the evars are indexed by z.
  NormalForm c = dst(fml("forallst z:N. st(z)"));
  REQUIRE(c.evars.size() == 1);
  CHECK(c.evars[0].second == Type::seq(Type::arrow(N, Type::seq(N))));
  REQUIRE(c.uvars.size() == 1);
  CHECK(c.uvars[0] == std::pair<std::string, Type>{"z", N});
  Formula expect = mem_formula(N, v("z"), Term::star(v(c.evars[0].first), {v("z")}));
  CHECK(alpha_equal(c.matrix, expect));

  // existsst z: one new sequence evar for the candidates.
  NormalForm d = dst(fml("existsst z:N. z = 0"));
  REQUIRE(d.evars.size() == 1);
  CHECK(d.evars[0].second == Type::seq(N));
  CHECK(d.uvars.empty());
  CHECK(alpha_equal(d.matrix, exists_in("z", N, v(d.evars[0].first), fml("z = 0", {{"z", N}}))));
}

TEST_CASE("conjunction and disjunction concatenate tuples") {
  gen::Rng rng(33);
  for (int i = 0; i < 100; ++i) {
    gen::FormulaGen g(rng, {.external = true});
    Formula a = g.formula(gen::pick(rng, 1, 3));
    Formula b = g.formula(gen::pick(rng, 1, 3));
    NormalForm na = dst(a), nb = dst(b);
    for (bool conj : {true, false}) {
      NormalForm nab = dst(conj ? Formula::conj(a, b) : Formula::disj(a, b));
      std::vector<Type> ev = types_of(na.evars), uv = types_of(na.uvars);
      for (const auto& t : types_of(nb.evars)) ev.push_back(t);
      for (const auto& t : types_of(nb.uvars)) uv.push_back(t);
      CHECK(types_of(nab.evars) == ev);
      CHECK(types_of(nab.uvars) == uv);
    }
  }
}

TEST_CASE("binders are renamed apart") {
  // Both conjuncts bind z as a universal variable.
  NormalForm nf = dst(fml("(forallst z:N. z = z) & (forallst z:N. z = 0)"));
  REQUIRE(nf.uvars.size() == 2);
  CHECK(nf.uvars[0].first != nf.uvars[1].first);
  // A bound name equal to a free one is renamed as well.
  TypingContext ctx{{"z", N}};
  NormalForm nf2 = dst(fml("st(z) & forallst z:N. z = 0", ctx), ctx);
  REQUIRE(nf2.uvars.size() == 1);
  CHECK(nf2.uvars[0].first != "z");
  CHECK(nf2.matrix.has_free("z"));
}

TEST_CASE("verification conditions") {
  Formula phi = fml("forall n:N. lt(n, S n)");
  CHECK(alpha_equal(verification_condition(dst(phi), {}), phi));

  NormalForm st0 = dst(Formula::st(Term::zero()));
  Formula vc = verification_condition(st0, {parse_term("<0>")});
  CHECK(vc.closed());
  CHECK(is_internal(vc));
  CHECK(alpha_equal(vc, mem_formula(N, Term::zero(), parse_term("<0>"))));
  CHECK(eval_internal(vc, {}, {}).value == Truth::True);
  CHECK(eval_internal(verification_condition(st0, {parse_term("<1, 2>")}), {}, {}).value == Truth::False);

  CHECK_THROWS_AS(verification_condition(st0, {}), ArityMismatch);
  CHECK_THROWS_AS(verification_condition(st0, {Term::zero()}), TypeError);
}

TEST_CASE("verification conditions of closed formulas are closed and internal") {
  gen::Rng rng(34);
  for (int i = 0; i < 200; ++i) {
    gen::FormulaGen g(rng, {.external = true});
    Formula f = g.formula(gen::pick(rng, 1, 4));
    if (!f.closed()) continue;
    NormalForm nf = dst(f);
    RealizerBundle r;
    for (const auto& [x, t] : nf.evars) r.push_back(zero_term(t));
    Formula vc = verification_condition(nf, r);
    CHECK_MESSAGE(vc.closed(), f.str());
    CHECK(is_internal(vc));
  }
}

TEST_CASE("simplify unfolds bounded quantifiers over literals") {
  Formula f = forall_in("y", N, parse_term("<1, 2>"), fml("lt(0, y)", {{"y", N}}));
  CHECK(alpha_equal(simplify(f), fml("lt(0, 1) & lt(0, 2)")));
  Formula g = exists_in("y", N, parse_term("<>:N"), fml("lt(0, y)", {{"y", N}}));
  CHECK(simplify(g).kind() == FormulaKind::False);
  Formula h = forall_in("y", N, parse_term("cat(<3>, <>:N)"), fml("y = 3", {{"y", N}}));
  CHECK(alpha_equal(simplify(h), fml("3 = 3")));
}

TEST_CASE("printed normal form") {
  NormalForm nf = dst(Formula::st(Term::zero()));
  CHECK(nf.str() == "EXISTS-ST [x1:N*] FORALL-ST [] MATRIX 0 in x1");
  CHECK(alpha_equal(nf.formula(), fml("existsst x1:N*. 0 in x1")));
}
