#include <doctest.h>

#include <algorithm>
#include <json.hpp>

#include "nsd/checker.hpp"
#include "nsd/error.hpp"
#include "nsd/formula_parse.hpp"
#include "nsd/parse.hpp"
#include "nsd/realizer.hpp"
#include "nsd/schema.hpp"
#include "support/formula_oracle.hpp"
#include "support/gen.hpp"

using namespace nsd;

namespace {

const Type N = Type::nat();

Formula fml(std::string_view src, const TypingContext& ctx = {}) {
  return parse_formula(src, Signature::standard(), ctx);
}

Truth eval(std::string_view src, const Instance& inst = {}) { return eval_internal(fml(src), {}, inst).value; }

Term numeral_seq(const std::vector<std::uint64_t>& xs) {
  std::vector<Term> ts;
  for (auto x : xs) ts.push_back(Term::numeral(x));
  return Term::seq_literal(N, ts);
}

// csat with phi(n, x) := forallst y:N. x = y, which has one inner universal
// variable and so one W realizer.
struct CsatCase {
  NormalForm nf;
  RealizerBundle r;
  Instance inst;
};

CsatCase csat_case() {
  TypingContext ctx{{"n", N}, {"x", N}};
  Formula phi = fml("forallst y:N. x = y", ctx);
  SchemaParams p;
  p.phi = phi;
  CsatCase c{dst(axiom_instance("csat", p)), csat_realizers(dst(phi, ctx)), {}};
  REQUIRE(c.nf.uvars.size() == 2);
  c.inst.generators[c.nf.uvars[0].first] = {numeral_seq({0}), numeral_seq({0, 1})};
  c.inst.generators[c.nf.uvars[1].first] = {numeral_seq({0}), numeral_seq({0, 1})};
  c.inst.generators["f"] = {parse_term("\\n:N. 0"), parse_term("\\n:N. 1")};
  return c;
}

}  // namespace

TEST_CASE("evaluation examples") {
  CHECK(eval("2 = 2") == Truth::True);
  CHECK(eval("exists i:N. lt(i, len(<1, 2>)) & get(<1, 2>, i, 0) = 2") == Truth::True);
  CHECK(eval("3 in <1, 2>") == Truth::False);
  CHECK(eval("false -> 0 = 1") == Truth::True);
  CHECK(eval("forall y:N in <4, 5>. lt(3, y)") == Truth::True);

  EvalResult hi = eval_internal(fml("forall g:N -> N. g 0 = g 0"), {}, {});
  CHECK(hi.value == Truth::Unknown);
  CHECK(hi.reason.find("UnboundedHigherTypeQuantifier") == 0);

  Instance gens;
  gens.generators["g"] = {parse_term("\\n:N. n"), parse_term("\\n:N. 7")};
  EvalResult g = eval_internal(fml("forall g:N -> N. lt(g 0, 8)"), {}, gens);
  CHECK(g.value == Truth::True);
  CHECK(g.capped);
  CHECK(eval("exists g:N -> N. g 0 = 7", gens) == Truth::True);
}

TEST_CASE("capped Nat quantifiers") {
  Instance inst;
  inst.cap = 2;
  EvalResult a = eval_internal(fml("forall n:N. lt(n, S n)"), {}, inst);
  CHECK(a.value == Truth::True);
  CHECK(a.capped);
  EvalResult b = eval_internal(fml("exists n:N. n = 3"), {}, inst);
  CHECK(b.value == Truth::False);
  CHECK(b.capped);
  // The cap is inclusive.
  CHECK(eval("exists n:N. n = 2", inst) == Truth::True);
  // A guarded quantifier is exact and ignores the cap.
  EvalResult c = eval_internal(fml("exists n:N. lt(n, 10) & n = 9"), {}, inst);
  CHECK(c.value == Truth::True);
  CHECK_FALSE(c.capped);
}

TEST_CASE("evaluation errors") {
  CHECK_THROWS_AS(eval_internal(fml("x = 0", {{"x", N}}), {}, {}), InstanceError);
  CHECK_THROWS_AS(eval_internal(fml("x = 0", {{"x", N}}), {{"x", Term::var("y")}}, {}), InstanceError);
  CHECK(eval_internal(fml("x = 0", {{"x", N}}), {{"x", Term::zero()}}, {}).value == Truth::True);
  CHECK_THROWS_AS(eval_internal(fml("st(0)"), {}, {}), ShapeError);
  Instance tiny;
  tiny.fuel = 20;
  CHECK_THROWS_AS(eval_internal(fml("rec(0; \\k:N. \\r:N. S r; 50) = 50"), {}, tiny), FuelExhausted);
}

TEST_CASE("agreement with the brute-force evaluator") {
  gen::Rng rng(41);
  for (int i = 0; i < 200; ++i) {
    gen::FormulaGen g(rng, {.nat_only = true});
    Formula f = g.formula(gen::pick(rng, 0, 3));
    if (!f.closed()) continue;
    Instance inst;
    inst.cap = static_cast<std::uint64_t>(gen::pick(rng, 0, 5));
    EvalResult r = eval_internal(f, {}, inst);
    REQUIRE(r.value != Truth::Unknown);
    CHECK_MESSAGE((r.value == Truth::True) == oracle::holds(f, {}, inst.cap), f.str());
  }
}

TEST_CASE("membership at N agrees with sequence search") {
  const Formula mem = mem_formula(N, Term::var("a"), Term::var("s"));
  std::vector<std::uint64_t> s;
  std::size_t checked = 0;
  auto visit = [&](auto&& self) -> void {
    Term st = numeral_seq(s);
    for (std::uint64_t a = 0; a <= 5; ++a) {
      bool expect = std::find(s.begin(), s.end(), a) != s.end();
      Truth got = eval_internal(mem, {{"a", Term::numeral(a)}, {"s", st}}, {}).value;
      if ((got == Truth::True) != expect) FAIL(st.str() << " at " << a);
      ++checked;
    }
    if (s.size() == 6) return;
    for (std::uint64_t x = 0; x <= 5; ++x) {
      s.push_back(x);
      self(self);
      s.pop_back();
    }
  };
  visit(visit);
  CHECK(checked == 6 * 55987);
}

TEST_CASE("checking realizers") {
  // Internal true formula, nothing to realize: one combination.
  Report a = check_realizer(dst(fml("0 = 0")), {}, {});
  CHECK(a.verdict == Verdict::Pass);
  CHECK(a.combinations == 1);

  Report b = check_realizer(dst(fml("0 = 1")), {}, {});
  CHECK(b.verdict == Verdict::Fail);
  CHECK(b.counterexample.empty());

  CHECK(check_realizer(dst(Formula::st(Term::zero())), {parse_term("<0>")}, {}).verdict == Verdict::Pass);
  CHECK(check_realizer(dst(Formula::st(Term::zero())), {parse_term("<1>")}, {}).verdict == Verdict::Fail);

  // Unbounded Nat quantifier in the matrix.
  Report c = check_realizer(dst(fml("forall n:N. lt(n, S n)")), {}, {});
  CHECK(c.verdict == Verdict::BoundedPass);

  Report d = check_realizer(dst(fml("forall g:N -> N. g 0 = g 0")), {}, {});
  CHECK(d.verdict == Verdict::Unknown);
  CHECK(d.reason.find("UnboundedHigherTypeQuantifier") == 0);
}

TEST_CASE("csat realizers and a corrupted bundle") {
  CsatCase c = csat_case();
  // On w = <0, 1> the premise  exists x:N. forall y in w. x = y  is refuted
  // only up to the cap.
  Report ok = check_realizer(c.nf, c.r, c.inst);
  CHECK(ok.verdict == Verdict::BoundedPass);
  CHECK(ok.combinations == 4);

  // W := Lambda ... <> makes the premise vacuous; the conclusion fails on
  // w = <0, 1> whatever f is.
  RealizerBundle bad = c.r;
  const Type& wt = c.nf.evars.back().second;
  bad.back() = zero_term(wt);
  Report fail = check_realizer(c.nf, bad, c.inst);
  CHECK(fail.verdict == Verdict::Fail);
  REQUIRE(fail.counterexample.size() == 2);
  CHECK(alpha_equal(fail.counterexample[0].second, numeral_seq({0})));
  CHECK(alpha_equal(fail.counterexample[1].second, numeral_seq({0, 1})));
  CHECK(fail.combinations == 2);

  // The counterexample reproduces.
  Formula m = instantiate(c.nf, bad);
  CHECK(eval_internal(m, fail.counterexample, c.inst).value == Truth::False);
}

TEST_CASE("instance coverage errors") {
  CsatCase c = csat_case();
  Instance missing = c.inst;
  missing.generators.erase(c.nf.uvars[0].first);
  CHECK_THROWS_AS(check_realizer(c.nf, c.r, missing), InstanceError);
  Instance wrong = c.inst;
  wrong.generators[c.nf.uvars[0].first] = {Term::zero()};
  CHECK_THROWS_AS(check_realizer(c.nf, c.r, wrong), InstanceError);
  Instance empty = c.inst;
  empty.generators[c.nf.uvars[0].first] = {};
  Report r = check_realizer(c.nf, c.r, empty);
  CHECK(r.verdict == Verdict::Pass);
  CHECK(r.combinations == 0);
}

TEST_CASE("check_realizer is consistent with pointwise evaluation and monotone") {
  gen::Rng rng(42);
  int fails = 0, passes = 0;
  for (int i = 0; i < 150; ++i) {
    gen::FormulaGen g(rng, {.external = true, .max_order = 1, .nat_only = true});
    Formula f = g.formula(gen::pick(rng, 1, 3));
    if (!f.closed()) continue;
    NormalForm nf = dst(f);
    if (nf.uvars.size() > 3) continue;
    RealizerBundle r;
    for (const auto& [x, t] : nf.evars) r.push_back(gen::TermGen(rng).term(t, 2));
    Instance inst;
    inst.cap = 3;
    inst.fuel = 200000;
    for (const auto& [y, t] : nf.uvars) {
      gen::TermGen tg(rng);
      inst.generators[y] = {tg.term(t, 2), tg.term(t, 2)};
    }
    Report rep;
    try {
      rep = check_realizer(nf, r, inst);
    } catch (const FuelExhausted&) {
      continue;
    }
    Formula m = instantiate(nf, r);
    INFO(f.str());
    if (rep.verdict == Verdict::Fail) {
      ++fails;
      CHECK(eval_internal(m, rep.counterexample, inst).value == Truth::False);
      Instance more = inst;
      for (const auto& [y, t] : nf.uvars) more.generators[y].push_back(gen::TermGen(rng).term(t, 2));
      CHECK(check_realizer(nf, r, more).verdict == Verdict::Fail);
    } else if (rep.verdict == Verdict::Pass || rep.verdict == Verdict::BoundedPass) {
      ++passes;
      // Every combination, evaluated directly.
      std::vector<std::size_t> idx(nf.uvars.size(), 0);
      for (;;) {
        Bindings env;
        for (std::size_t k = 0; k < idx.size(); ++k)
          env.emplace_back(nf.uvars[k].first, inst.generators[nf.uvars[k].first][idx[k]]);
        CHECK(eval_internal(m, env, inst).value == Truth::True);
        std::size_t k = idx.size();
        while (k > 0 && ++idx[k - 1] == 2) idx[--k] = 0;
        if (k == 0) break;
      }
    }
  }
  CHECK(fails > 5);
  CHECK(passes > 5);
}

TEST_CASE("instance files") {
  const char* text = R"(# small instance
fuel 5000
cap 3
gen s : N* = <>:N, <0>, <0, 1>
gen s : N* = <2>
gen g : N -> N = \n:N. S n
table R 2 2  1 0  0 1
)";
  Instance inst = parse_instance(text);
  CHECK(inst.fuel == 5000);
  CHECK(inst.cap == 3);
  CHECK(inst.generators["s"].size() == 4);
  CHECK(inst.generators["g"].size() == 1);
  const PredicateDecl* r = inst.sig.find("R");
  REQUIRE(r);
  CHECK(r->interp(std::vector<std::uint64_t>{0, 0}));
  CHECK_FALSE(r->interp(std::vector<std::uint64_t>{0, 1}));
  CHECK(inst.sig.contains("lt"));

  Instance loaded = parse_instance("table T @t.tbl\n", [](const std::string& path) {
    CHECK(path == "t.tbl");
    return std::string("1 2\n0 1\n");
  });
  CHECK(loaded.sig.find("T")->interp(std::vector<std::uint64_t>{0, 1}));

  CHECK_THROWS_AS(parse_instance("bogus 1\n"), ParseError);
  CHECK_THROWS_AS(parse_instance("cap x\n"), ParseError);
  CHECK_THROWS_AS(parse_instance("gen s : N* = 0\n"), InstanceError);
  CHECK_THROWS_AS(parse_instance("table R 2 2 1 0 1\n"), InstanceError);
  CHECK_THROWS_AS(parse_instance("table R @x.tbl\n"), InstanceError);
}

TEST_CASE("report output") {
  CsatCase c = csat_case();
  RealizerBundle bad = c.r;
  bad.back() = zero_term(c.nf.evars.back().second);
  Report fail = check_realizer(c.nf, bad, c.inst);
  auto j = nlohmann::json::parse(fail.json());
  CHECK(j["verdict"] == "Fail");
  CHECK(j["counterexample"].size() == 2);
  CHECK(j["combinations"] == 2);
  CHECK(fail.str().find("verdict: Fail") == 0);

  auto p = nlohmann::json::parse(check_realizer(c.nf, c.r, c.inst).json());
  CHECK(p["verdict"] == "BoundedPass");
  CHECK(p["counterexample"].is_null());
  CHECK(p["cap"] == kDefaultCap);
}
