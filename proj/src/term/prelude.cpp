#include "nsd/prelude.hpp"

#include "nsd/parse.hpp"

namespace nsd::prelude {

namespace {

const Type kBin = Type::arrow(Type::nat(), Type::arrow(Type::nat(), Type::nat()));
const Type kUn = Type::arrow(Type::nat(), Type::nat());

// Parses `src` with the named helpers in scope, then inlines them.
Term define(std::string_view src, const Substitution& helpers) {
  TypingContext ctx;
  for (const auto& [name, def] : helpers) ctx.declare(name, name == "pred" || name == "mod2" ? kUn : kBin);
  return substitute(parse_term(src, ctx), helpers);
}

}  // namespace

Term add() {
  static const Term t = parse_term(R"(\a:N. \b:N. rec(a; \k:N. \r:N. S r; b))");
  return t;
}

Term mul() {
  static const Term t = define(R"(\a:N. \b:N. rec(0; \k:N. \r:N. add r a; b))", {{"add", add()}});
  return t;
}

Term pred() {
  static const Term t = parse_term(R"(\a:N. rec(0; \k:N. \r:N. k; a))");
  return t;
}

Term monus() {
  static const Term t = define(R"(\a:N. \b:N. rec(a; \k:N. \r:N. pred r; b))", {{"pred", pred()}});
  return t;
}

Term eq() {
  static const Term t =
      define(R"(\a:N. \b:N. add (monus a b) (monus b a))", {{"add", add()}, {"monus", monus()}});
  return t;
}

Term lt() {
  static const Term t = define(R"(\a:N. \b:N. monus (S a) b)", {{"monus", monus()}});
  return t;
}

Term mod2() {
  static const Term t = parse_term(R"(\n:N. rec(0; \k:N. \r:N. rec(1; \j:N. \q:N. 0; r); n))");
  return t;
}

Term seq_eq() {
  static const Term t = define(
      R"(\s:N*. \t:N*. add (eq (len(s)) (len(t)))
           (lrec(0; \p:N*. \x:N. \r:N. add r (eq x (get(t, len(p), 0))); s)))",
      {{"add", add()}, {"eq", eq()}});
  return t;
}

Term add(const Term& a, const Term& b) { return Term::app(Term::app(add(), a), b); }
Term mul(const Term& a, const Term& b) { return Term::app(Term::app(mul(), a), b); }
Term eq(const Term& a, const Term& b) { return Term::app(Term::app(eq(), a), b); }

Term ifz(const Term& e, const Term& a, const Term& b, const Type& t) {
  std::string k = fresh_name("k", {&b.free_vars()});
  std::string r = fresh_name("r", {&b.free_vars()}, std::span<const std::string>(&k, 1));
  return Term::nat_rec(a, Term::lam(k, Type::nat(), Term::lam(r, t, b)), e);
}

}  // namespace nsd::prelude
