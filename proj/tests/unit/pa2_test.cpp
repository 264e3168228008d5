#include <doctest.h>

#include "nsd/checker.hpp"
#include "nsd/error.hpp"
#include "nsd/formula_parse.hpp"
#include "nsd/pa2.hpp"
#include "nsd/realizer.hpp"
#include "support/gen2.hpp"
#include "support/oracle.hpp"

using namespace nsd;
using namespace nsd::pa2;

namespace {

const Type N = Type::nat();
using K = Formula2::Kind;

// Direct arithmetic, independent of the embedding.
std::uint64_t value(const NumTerm& t, std::uint64_t n) {
  switch (t.kind) {
    case NumTerm::Kind::Zero: return 0;
    case NumTerm::Kind::Succ: return value(t.args[0], n) + 1;
    case NumTerm::Kind::Add: return value(t.args[0], n) + value(t.args[1], n);
    case NumTerm::Kind::Mul: return value(t.args[0], n) * value(t.args[1], n);
    case NumTerm::Kind::Var: return n;
  }
  return 0;
}

bool truth(const Formula2& f, std::uint64_t n) {
  switch (f.kind) {
    case K::Eq: return value(f.terms[0], n) == value(f.terms[1], n);
    case K::False: return false;
    case K::And: return truth(f.kids[0], n) && truth(f.kids[1], n);
    case K::Or: return truth(f.kids[0], n) || truth(f.kids[1], n);
    case K::Imp: return !truth(f.kids[0], n) || truth(f.kids[1], n);
    default: throw std::logic_error("quantifier-free formulas only");
  }
}

int standard_quantifiers(const Formula& f) {
  int own = f.kind() == FormulaKind::ForallSt || f.kind() == FormulaKind::ExistsSt;
  for (std::size_t i = 0; i < f.arity(); ++i) own += standard_quantifiers(f.child(i));
  return own;
}

int number_quantifiers(const Formula2& f) {
  int own = f.kind == K::All || f.kind == K::Ex;
  for (const auto& k : f.kids) own += number_quantifiers(k);
  return own;
}

// embed(f) mirrors f node by node.
void audit(const Formula2& f, const Formula& g) {
  INFO(f.str());
  switch (f.kind) {
    case K::All:
    case K::Ex:
      CHECK(g.kind() == (f.kind == K::All ? FormulaKind::ForallSt : FormulaKind::ExistsSt));
      CHECK(g.type() == N);
      CHECK(g.name() == f.name);
      audit(f.kids[0], g.child(0));
      return;
    case K::All2:
    case K::Ex2:
      CHECK(g.kind() == (f.kind == K::All2 ? FormulaKind::Forall : FormulaKind::Exists));
      CHECK(g.type() == Type::seq(N));
      audit(f.kids[0], g.child(0));
      return;
    case K::In: {
      auto m = match_mem(g);
      REQUIRE(m);
      CHECK(alpha_equal(m->seq, Term::var(f.name)));
      return;
    }
    case K::Eq: CHECK(g.kind() == FormulaKind::Eq); return;
    case K::False: CHECK(g.kind() == FormulaKind::False); return;
    default:
      REQUIRE(g.arity() == 2);
      CHECK(g.kind() == (f.kind == K::And ? FormulaKind::And : f.kind == K::Or ? FormulaKind::Or : FormulaKind::Imp));
      audit(f.kids[0], g.child(0));
      audit(f.kids[1], g.child(1));
  }
}

}  // namespace

TEST_CASE("second-order syntax") {
  Formula2 f = parse_formula2("ALL n. EX2 X. n in X & !(S n = 0)");
  CHECK(f.kind == K::All);
  CHECK(f.kids[0].kind == K::Ex2);
  CHECK(f.str() == "ALL n. EX2 X. n in X & !S n = 0");
  CHECK(parse_formula2("2 * (n + 1) = S m").terms[0] ==
        NumTerm::mul(NumTerm::numeral(2), NumTerm::add(NumTerm::var("n"), NumTerm::numeral(1))));
  CHECK(parse_formula2("(n = 0)") == parse_formula2("n = 0"));
  CHECK(parse_formula2("(n) + 0 = n").kind == K::Eq);
  CHECK(parse_formula2("a = b <-> b = a") ==
        Formula2::iff(Formula2::eq(NumTerm::var("a"), NumTerm::var("b")),
                      Formula2::eq(NumTerm::var("b"), NumTerm::var("a"))));

  CHECK_THROWS_AS(parse_formula2("ALL n."), ParseError);
  CHECK_THROWS_AS(parse_formula2("n = "), ParseError);
  CHECK_THROWS_AS(parse_formula2("n in 0"), ParseError);
  CHECK_THROWS_AS(parse_formula2("ALL S. S = 0"), ParseError);
  CHECK_THROWS_AS(parse_formula2("ALL2 n. n = 0"), ScopeError);
  CHECK_THROWS_AS(parse_formula2("X = 0 & 0 in X"), ScopeError);
}

TEST_CASE("second-order printing round-trips") {
  gen::Rng rng(61);
  for (int i = 0; i < 100; ++i) {
    Formula2 f = gen::Formula2Gen(rng).formula(gen::pick(rng, 0, 4));
    CHECK_MESSAGE(parse_formula2(f.str()) == f, f.str());
  }
}

TEST_CASE("embedding examples") {
  CHECK(alpha_equal(embed(parse_formula2("ALL n. n = n")),
                    Formula::forall_st("n", N, Formula::eq(Term::var("n"), Term::var("n")))));
  Formula mem = embed(parse_formula2("n in X"));
  CHECK(alpha_equal(mem, mem_formula(N, Term::var("n"), Term::var("X"))));
  CHECK(mem.kind() == FormulaKind::Exists);
  CHECK(is_internal(mem));

  Formula c = embed(parse_formula2("EX2 X. ALL n. (n in X <-> n = n)"));
  CHECK(c.kind() == FormulaKind::Exists);
  CHECK(c.type() == Type::seq(N));
  CHECK(c.child(0).kind() == FormulaKind::ForallSt);

  TypingContext ctx = embed_context(parse_formula2("n in X & m = 0"));
  CHECK(ctx.lookup("X") == Type::seq(N));
  CHECK(ctx.lookup("n") == N);
}

TEST_CASE("arithmetic is the recursion-defined one") {
  for (std::uint64_t a = 0; a <= 5; ++a)
    for (std::uint64_t b = 0; b <= 5; ++b) {
      NumTerm x = NumTerm::numeral(a), y = NumTerm::numeral(b);
      CHECK(oracle::eval_nat(embed_term(NumTerm::add(x, y))) == a + b);
      CHECK(oracle::eval_nat(embed_term(NumTerm::mul(x, y))) == a * b);
    }
}

TEST_CASE("embedding audit") {
  gen::Rng rng(62);
  for (int i = 0; i < 100; ++i) {
    Formula2 f = gen::Formula2Gen(rng).formula(gen::pick(rng, 0, 4));
    Formula g = embed(f);
    CHECK_NOTHROW(check_formula(Signature::standard(), embed_context(f), g));
    CHECK(standard_quantifiers(g) == number_quantifiers(f));
    audit(f, g);
  }
}

TEST_CASE("embedding is compositional") {
  gen::Rng rng(63);
  for (int i = 0; i < 50; ++i) {
    gen::Formula2Gen g(rng);
    Formula2 a = g.formula(2), b = g.formula(2);
    try {
      check_scope(Formula2::conj(a, b));
    } catch (const ScopeError&) {
      continue;
    }
    CHECK(alpha_equal(embed(Formula2::conj(a, b)), Formula::conj(embed(a), embed(b))));
    CHECK(alpha_equal(embed(Formula2::disj(a, b)), Formula::disj(embed(a), embed(b))));
    CHECK(alpha_equal(embed(Formula2::imp(a, b)), Formula::imp(embed(a), embed(b))));
    CHECK(alpha_equal(embed(Formula2::all("n", a)), Formula::forall_st("n", N, embed(a))));
    CHECK(alpha_equal(embed(Formula2::ex2("X", a)), Formula::exists("X", Type::seq(N), embed(a))));
  }
}

TEST_CASE("comprehension instances") {
  Formula2 self = comprehension_instance(parse_formula2("n = n"));
  CHECK(self == parse_formula2("EX2 X. ALL n. (n in X <-> n = n)"));
  CHECK(comprehension_instance(parse_formula2("n = 0")) == parse_formula2("EX2 X. ALL n. (n in X <-> n = 0)"));
  // The set variable avoids names in phi.
  Formula2 avoid = comprehension_instance(parse_formula2("EX2 X. n in X"));
  CHECK(avoid.name == "X1");

  CHECK_THROWS_AS(comprehension_instance(parse_formula2("n = m")), ScopeError);
  CHECK_THROWS_AS(comprehension_instance(parse_formula2("n in Y")), ScopeError);
  CHECK_THROWS_AS(comprehension_instance(parse_formula2("EX2 n. 0 in n"), "n"), ScopeError);
}

TEST_CASE("indicators of decidable formulas") {
  gen::Rng rng(64);
  for (int i = 0; i < 40; ++i) {
    Formula2 phi = gen::Formula2Gen(rng, true).formula(gen::pick(rng, 0, 3));
    Term ind = indicator(phi);
    CHECK(infer_type({}, ind) == Type::arrow(N, N));
    for (std::uint64_t n = 0; n <= 5; ++n)
      CHECK_MESSAGE((oracle::eval_nat(Term::app(ind, Term::numeral(n))) == 0) == truth(phi, n), phi.str());
  }
  CHECK_THROWS_AS(indicator(parse_formula2("ALL m. m = n")), ShapeError);
  CHECK_THROWS_AS(indicator(parse_formula2("n in X")), ScopeError);
}

TEST_CASE("comprehension at a bound") {
  gen::Rng rng(65);
  for (int i = 0; i < 20; ++i) {
    Formula2 phi = gen::Formula2Gen(rng, true).formula(gen::pick(rng, 0, 3));
    std::uint64_t k = static_cast<std::uint64_t>(gen::pick(rng, 0, 8));
    ComprehensionAtBound c = comprehension_at_bound(phi, "n", k);
    auto elems = as_seq_literal(c.s);
    REQUIRE(elems);
    std::size_t expected = 0;
    for (std::uint64_t n = 0; n <= k; ++n) {
      expected += truth(phi, n);
      Bindings env{{"n", Term::numeral(n)}, {c.set_var, c.s}};
      CHECK_MESSAGE(eval_internal(c.biconditional, env, {}).value == Truth::True, phi.str(), " at ", n);
    }
    CHECK(elems->size() == expected);
  }
}
