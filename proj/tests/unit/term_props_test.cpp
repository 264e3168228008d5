#include <doctest.h>

#include "nsd/error.hpp"
#include "nsd/machine.hpp"
#include "nsd/normalize.hpp"
#include "nsd/parse.hpp"
#include "nsd/star.hpp"
#include "nsd/typing.hpp"
#include "support/gen.hpp"
#include "support/oracle.hpp"

using namespace nsd;

TEST_CASE("subject reduction and idempotence on random terms") {
  gen::Rng rng(11);
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    Type ty = gen::type(rng, 2);
    Term t = gen::TermGen(rng).term(ty, gen::pick(rng, 1, 5));
    REQUIRE(infer_type({}, t) == ty);
    try {
      Term n = normalize(t);
      CHECK_MESSAGE(infer_type({}, n) == ty, t.str());
      CHECK_MESSAGE(alpha_equal(normalize(n), n), t.str());
      CHECK(alpha_equal(normalize(t), n));
      ++checked;
    } catch (const FuelExhausted&) {
    }
  }
  CHECK(checked >= 190);
}

TEST_CASE("closed Nat terms agree with the reference evaluator") {
  gen::Rng rng(12);
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    Term t = gen::TermGen(rng).term(Type::nat(), gen::pick(rng, 1, 6));
    std::uint64_t expect = oracle::eval_nat(t);
    try {
      auto n = as_numeral(normalize(t));
      REQUIRE_MESSAGE(n.has_value(), t.str());
      CHECK_MESSAGE(*n == expect, t.str());
      Machine m;
      CHECK_MESSAGE(m.eval_nat(t) == expect, t.str());
      ++checked;
    } catch (const FuelExhausted&) {
    }
  }
  CHECK(checked >= 290);
}

TEST_CASE("bounded application of an abstraction is substitution") {
  gen::Rng rng(13);
  for (int i = 0; i < 100; ++i) {
    Type xt = gen::type(rng, 1);
    Type body = Type::seq(gen::type(rng, 1));
    Term t = gen::TermGen(rng, {{"x", xt}}).term(body, gen::pick(rng, 1, 4));
    Term s = gen::TermGen(rng).term(xt, gen::pick(rng, 0, 3));
    Term lhs = normalize(bounded_apply({}, big_lambda({}, "x", xt, t), s));
    Term rhs = normalize(substitute(t, "x", s));
    CHECK_MESSAGE(alpha_equal(lhs, rhs), (t.str() + " / " + s.str()));
    Term star = bounded_apply({}, big_lambda({}, "x", xt, t), s);
    CHECK(alpha_equal(normalize(expand_bounded_apply({}, star.child(0), star.children().subspan(1))), rhs));
  }
}

TEST_CASE("printing round-trips on random terms") {
  gen::Rng rng(14);
  for (int i = 0; i < 200; ++i) {
    Type ty = gen::type(rng, 2);
    Term t = gen::TermGen(rng).term(ty, gen::pick(rng, 1, 5));
    Term back = parse_term(t.str());
    CHECK_MESSAGE(alpha_equal(back, t), t.str());
  }
}
