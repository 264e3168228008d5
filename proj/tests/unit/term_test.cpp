#include <doctest.h>

#include "nsd/error.hpp"
#include "nsd/machine.hpp"
#include "nsd/normalize.hpp"
#include "nsd/parse.hpp"
#include "nsd/prelude.hpp"
#include "nsd/star.hpp"
#include "nsd/typing.hpp"

using namespace nsd;

namespace {

const Type N = Type::nat();
Type arr(Type a, Type b) { return Type::arrow(std::move(a), std::move(b)); }
Type seq(Type a) { return Type::seq(std::move(a)); }

Term nf(std::string_view src, const TypingContext& ctx = {}) { return normalize(parse_term(src, ctx)); }

std::uint64_t value(std::string_view src) {
  auto n = as_numeral(nf(src));
  REQUIRE(n.has_value());
  return *n;
}

}  // namespace

TEST_CASE("types print and compare structurally") {
  CHECK(arr(N, arr(N, N)).str() == "N -> N -> N");
  CHECK(arr(arr(N, N), N).str() == "(N -> N) -> N");
  CHECK(seq(arr(N, N)).str() == "(N -> N)*");
  CHECK(seq(seq(N)) == parse_type("N**"));
  CHECK(parse_type("(N -> N*)* -> N") == arr(seq(arr(N, seq(N))), N));
  CHECK(arr(arr(N, N), N).order() == 2);
  CHECK(seq(arr(N, N)).order() == 1);
}

TEST_CASE("type inference on base constants and constructors") {
  CHECK(infer_type({}, Term::zero()) == N);
  CHECK(infer_type({}, Term::lam("x", N, Term::var("x"))) == arr(N, N));
  CHECK(infer_type({}, Term::snoc(Term::empty_seq(N), Term::zero())) == seq(N));
  CHECK(infer_type({}, parse_term("br(\\a:N -> N. a 0; \\s:N*. len(s); \\s:N*. \\p:N -> N. p 0; <>:N)")) == N);
  CHECK(infer_type({{"f", arr(N, N)}}, parse_term("get(<f>, 0, \\z:N. 0) 3", {{"f", arr(N, N)}})) == N);
}

TEST_CASE("type errors name their kind") {
  auto kind_of = [](const Term& t, const TypingContext& ctx = {}) {
    try {
      infer_type(ctx, t);
    } catch (const TypeError& e) {
      return std::optional<TypeErrorKind>(e.kind());
    }
    return std::optional<TypeErrorKind>();
  };
  CHECK(kind_of(Term::var("x")) == TypeErrorKind::UnboundVariable);
  CHECK(kind_of(Term::app(Term::zero(), Term::zero())) == TypeErrorKind::NonFunctionApplication);
  CHECK(kind_of(parse_term("(\\x:N*. x) 0")) == TypeErrorKind::ArgumentMismatch);
  CHECK(kind_of(parse_term("cat(<1>, <<1>>)")) == TypeErrorKind::ArgumentMismatch);
  CHECK(kind_of(parse_term("Y[0]", {{"Y", seq(arr(N, N))}}), {{"Y", seq(arr(N, N))}}) ==
        TypeErrorKind::ArgumentMismatch);
}

TEST_CASE("normalization follows the defining equations") {
  TypingContext ctx{{"g", N}, {"h", arr(N, arr(N, N))}};
  CHECK(alpha_equal(nf("rec(g; h; 0)", ctx), Term::var("g")));
  CHECK(value("(\\x:N. x) (S 0)") == 1);
  CHECK(value("len(cat(<2, 5>, <7>))") == 3);
  CHECK(alpha_equal(nf("rec(g; h; 2)", ctx), parse_term("h 1 (h 0 g)", ctx)));
  CHECK(value("lrec(0; \\p:N*. \\x:N. \\r:N. x; <4, 9>)") == 9);
  CHECK(value("get(<4, 9>, 1, 0)") == 9);
  CHECK(value("get(<4, 9>, 2, 6)") == 6);
  CHECK(alpha_equal(nf("cat(<1>, <2, 3>)"), parse_term("<1, 2, 3>")));
  CHECK(alpha_equal(nf("cat(<>:N, s)", {{"s", seq(N)}}), Term::var("s")));
}

TEST_CASE("prelude arithmetic") {
  auto eval = [](const Term& t) { return *as_numeral(normalize(t)); };
  for (std::uint64_t a = 0; a <= 6; ++a) {
    for (std::uint64_t b = 0; b <= 6; ++b) {
      Term A = Term::numeral(a), B = Term::numeral(b);
      CHECK(eval(prelude::add(A, B)) == a + b);
      CHECK(eval(prelude::mul(A, B)) == a * b);
      CHECK((eval(prelude::eq(A, B)) == 0) == (a == b));
      CHECK((eval(Term::app(Term::app(prelude::lt(), A), B)) == 0) == (a < b));
      CHECK(eval(Term::app(Term::app(prelude::monus(), A), B)) == (a > b ? a - b : 0));
    }
    CHECK(eval(Term::app(prelude::mod2(), Term::numeral(a))) == a % 2);
  }
  auto seq_eq = [&](std::string_view s, std::string_view t) {
    return eval(Term::app(Term::app(prelude::seq_eq(), parse_term(s)), parse_term(t))) == 0;
  };
  CHECK(seq_eq("<>:N", "<>:N"));
  CHECK(seq_eq("<1, 0>", "<1, 0>"));
  CHECK_FALSE(seq_eq("<1, 0>", "<1>"));
  CHECK_FALSE(seq_eq("<1, 0>", "<1, 1>"));
  CHECK_FALSE(seq_eq("<>:N", "<0>"));
}

TEST_CASE("bounded application and its abstraction") {
  TypingContext ctx;
  Term Y = parse_term("<\\n:N. <n>, \\n:N. <n, S n>>");
  CHECK(alpha_equal(normalize(bounded_apply(ctx, Y, Term::numeral(3))), parse_term("<3, 3, 4>")));
  Term empty = Term::empty_seq(arr(N, seq(N)));
  CHECK(alpha_equal(normalize(bounded_apply(ctx, empty, Term::numeral(3))), Term::empty_seq(N)));

  Term idl = big_lambda(ctx, "x", N, Term::var("x"));
  CHECK(as_seq_literal(idl)->size() == 1);
  CHECK(alpha_equal(idl, parse_term("<\\x:N. x>")));
  CHECK(value("len(<\\x:N. <x, x>>)") == 1);

  Term single = big_lambda(ctx, "n", N, parse_term("<n>", {{"n", N}}));
  CHECK(alpha_equal(normalize(bounded_apply(ctx, single, Term::numeral(7))), parse_term("<7>")));

  // Two arguments are curried.
  Term two = big_lambda(ctx, {{"a", N}, {"b", N}}, parse_term("<a, b>", {{"a", N}, {"b", N}}));
  Term args[] = {Term::numeral(1), Term::numeral(2)};
  CHECK(alpha_equal(normalize(bounded_apply(ctx, two, args)), parse_term("<1, 2>")));
  CHECK(alpha_equal(normalize(expand_bounded_apply(ctx, two, args)), parse_term("<1, 2>")));
  // No arguments: Y[] = Y.
  CHECK(bounded_apply(ctx, Y, std::span<const Term>{}).same(Y));

  CHECK_THROWS_AS(bounded_apply(ctx, parse_term("<\\n:N. n>"), Term::zero()), TypeError);
}

TEST_CASE("bar recursion") {
  // Immediate bar: Y(s^) = 0 < |<5>|.
  Term r = spector_br(parse_term("\\a:N -> N. 0"), parse_term("\\s:N*. get(s, 0, 0)"),
                      parse_term("\\s:N*. \\p:N -> N. 9"), parse_term("<5>"));
  CHECK(as_numeral(r) == 5u);

  // B(<>) = H(<>, p) = B(<0>) = G(<0>) = 1.
  r = spector_br(parse_term("\\a:N -> N. a 0"), parse_term("\\s:N*. len(s)"),
                 parse_term("\\s:N*. \\p:N -> N. p 0"), parse_term("<>:N"));
  CHECK(as_numeral(r) == 1u);

  // No bar is ever reached.
  CHECK_THROWS_AS(spector_br(parse_term("\\a:N -> N. 1000"), parse_term("\\s:N*. 0"),
                             parse_term("\\s:N*. \\p:N -> N. p 0"), parse_term("<>:N"), 2000),
                  FuelExhausted);
}

TEST_CASE("the machine agrees with the normalizer on observables") {
  const char* progs[] = {
      "len(cat(<2, 5>, <7>))",
      "get(<\\n:N. <n>, \\n:N. <n, S n>>[3], 2, 0)",
      "br(\\a:N -> N. a 0; \\s:N*. len(s); \\s:N*. \\p:N -> N. p 0; <>:N)",
      "br(\\a:N -> N. a (a 0); \\s:N*. lrec(0; \\p:N*. \\x:N. \\r:N. S (r); s); \\s:N*. \\p:N -> N. p (S (len(s))); <>:N)",
      "rec(3; \\k:N. \\r:N. S (S r); 4)",
      "lrec(0; \\p:N*. \\x:N. \\r:N. x; <4, 9>)",
  };
  for (const char* src : progs) {
    Term t = parse_term(src);
    Machine m;
    CHECK_MESSAGE(m.eval_nat(t) == *as_numeral(normalize(t)), src);
  }
  Machine m(50);
  CHECK_THROWS_AS(m.eval_nat(parse_term("rec(0; \\k:N. \\r:N. S r; 100)")), FuelExhausted);
}

TEST_CASE("printing round-trips through the parser") {
  TypingContext ctx{{"f", arr(N, N)}, {"s", seq(N)}, {"Y", seq(arr(N, seq(N)))}};
  const char* srcs[] = {
      "\\x:N. f (S x)",
      "(\\x:N. x) 3",
      "<>:(N -> N)",
      "<1, 2, f 3>",
      "snoc(s, 4)",
      "rec(0; \\k:N. \\r:N. f r; 5)",
      "lrec(0; \\p:N*. \\x:N. \\r:N. x; s)",
      "br(\\a:N -> N. a 0; \\t:N*. len(t); \\t:N*. \\p:N -> N. p 0; s)",
      "get(s, 1, 0)",
      "cat(s, <3>)",
      "Y[2]",
      "f (Y[2] = Y[2])",
  };
  for (const char* src : srcs) {
    if (std::string_view(src).find('=') != std::string_view::npos) {
      CHECK_THROWS_AS(parse_term(src, ctx), ParseError);
      continue;
    }
    Term t = parse_term(src, ctx);
    CHECK_MESSAGE(alpha_equal(parse_term(t.str(), ctx), t), src);
  }
  CHECK_THROWS_AS(parse_term("\\x:N. rec(0; x)"), ParseError);
  CHECK_THROWS_AS(parse_term("len(s"), ParseError);
}

TEST_CASE("substitution avoids capture") {
  Term t = parse_term("\\y:N. x", {{"x", N}});
  Term r = substitute(t, "x", Term::var("y"));
  REQUIRE(r.kind() == TermKind::Lam);
  CHECK(r.name() != "y");
  CHECK(r.child(0).name() == "y");
  CHECK(alpha_equal(parse_term("\\a:N. a"), parse_term("\\b:N. b")));
  CHECK_FALSE(alpha_equal(parse_term("\\a:N. \\b:N. a"), parse_term("\\a:N. \\b:N. b")));
}
