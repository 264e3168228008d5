#include "nsd/formula_parse.hpp"

#include "nsd/error.hpp"
#include "nsd/parse.hpp"

namespace nsd {

namespace {

class FormulaParser {
 public:
  FormulaParser(Lexer& lex, const Signature& sig, const TypingContext& ctx)
      : lex_(lex), sig_(sig), terms_(lex, ctx) {}

  Formula formula() {
    if (at_quantifier()) return quantified();
    Formula a = implication();
    if (lex_.accept("<->")) return iff(a, implication());
    return a;
  }

 private:
  bool at_quantifier() const {
    return lex_.is("forall") || lex_.is("exists") || lex_.is("forallst") || lex_.is("existsst");
  }

  Formula quantified() {
    std::string word = lex_.next().text;
    FormulaKind k = word == "forall"     ? FormulaKind::Forall
                    : word == "exists"   ? FormulaKind::Exists
                    : word == "forallst" ? FormulaKind::ForallSt
                                         : FormulaKind::ExistsSt;
    std::string x = lex_.expect_ident();
    if (TermParser::reserved(x)) lex_.fail("reserved word used as a variable");
    lex_.expect(":");
    Type t = terms_.type();
    std::optional<Term> bound;
    if (lex_.accept("in")) {
      if (k != FormulaKind::Forall && k != FormulaKind::Exists) lex_.fail("only internal quantifiers may be bounded");
      bound = terms_.term();
    }
    lex_.expect(".");
    TypingContext saved = terms_.context();
    terms_.context().declare(x, t);
    Formula body;
    try {
      body = formula();
    } catch (...) {
      terms_.context() = std::move(saved);
      throw;
    }
    terms_.context() = std::move(saved);
    if (bound) return k == FormulaKind::Forall ? forall_in(x, t, *bound, body) : exists_in(x, t, *bound, body);
    return Formula::quant(k, x, t, body);
  }

  Formula implication() {
    Formula a = disjunction();
    if (lex_.accept("->")) return Formula::imp(a, at_quantifier() ? quantified() : implication());
    return a;
  }

  Formula disjunction() {
    Formula a = conjunction();
    while (lex_.accept("|")) a = Formula::disj(a, conjunction());
    return a;
  }

  Formula conjunction() {
    Formula a = unary();
    while (lex_.accept("&")) a = Formula::conj(a, unary());
    return a;
  }

  Formula unary() {
    if (lex_.accept("!")) return negate(unary());
    if (at_quantifier()) return quantified();
    return atom();
  }

  Formula atom() {
    if (lex_.accept("false")) return Formula::falsum();
    if (lex_.is("st") && lex_.is("(", 1)) {
      lex_.next();
      lex_.next();
      Term t = terms_.term();
      lex_.expect(")");
      return Formula::st(t);
    }
    if (lex_.peek().kind == Lexer::Tok::Ident && sig_.contains(lex_.peek().text) && lex_.is("(", 1)) {
      std::string name = lex_.next().text;
      lex_.next();
      std::vector<Term> args;
      if (!lex_.is(")")) {
        do args.push_back(terms_.term());
        while (lex_.accept(","));
      }
      lex_.expect(")");
      return Formula::pred(name, std::move(args));
    }
    if (lex_.is("(")) {
      // Either a parenthesized formula or a term starting with '('.
      std::size_t m = lex_.mark();
      try {
        return term_atom();
      } catch (const ParseError&) {
        lex_.reset(m);
      }
      lex_.expect("(");
      Formula f = formula();
      lex_.expect(")");
      return f;
    }
    return term_atom();
  }

  Formula term_atom() {
    Term t = terms_.term();
    if (lex_.accept("=")) return Formula::eq(t, terms_.term());
    if (lex_.accept("in")) {
      std::size_t at = lex_.peek().offset;
      Term s = terms_.term();
      Type ty;
      try {
        ty = infer_type(terms_.context(), t);
      } catch (const TypeError& e) {
        throw ParseError(std::string("cannot type membership element: ") + e.what(), at);
      }
      return mem_formula(ty, t, s);
    }
    lex_.fail("expected '=' or 'in' after term");
  }

  Lexer& lex_;
  const Signature& sig_;
  TermParser terms_;
};

}  // namespace

Formula parse_formula(std::string_view src, const Signature& sig, const TypingContext& ctx) {
  Lexer lex(src);
  FormulaParser p(lex, sig, ctx);
  Formula f = p.formula();
  if (!lex.at_end()) lex.fail("trailing input");
  return f;
}

FormulaFile parse_formula_file(std::string_view src) {
  Lexer lex(src);
  FormulaFile out{Signature::standard(), {}, Formula::falsum()};
  TermParser types(lex, {});
  for (;;) {
    if (lex.is("pred") && lex.peek(1).kind == Lexer::Tok::Ident && lex.is("(", 2)) {
      lex.next();
      PredicateDecl d;
      d.name = lex.expect_ident();
      lex.expect("(");
      if (!lex.is(")")) {
        do d.args.push_back(types.type());
        while (lex.accept(","));
      }
      lex.expect(")");
      lex.expect(";");
      std::string name = d.name;
      d.interp = [name](std::span<const std::uint64_t>) -> bool {
        throw InstanceError("predicate " + name + " has no interpretation");
      };
      out.sig.add(std::move(d));
      continue;
    }
    if (lex.is("var") && lex.peek(1).kind == Lexer::Tok::Ident && lex.is(":", 2)) {
      lex.next();
      std::string x = lex.expect_ident();
      lex.expect(":");
      out.ctx.declare(x, types.type());
      lex.expect(";");
      continue;
    }
    break;
  }
  FormulaParser p(lex, out.sig, out.ctx);
  out.formula = p.formula();
  if (!lex.at_end()) lex.fail("trailing input");
  check_formula(out.sig, out.ctx, out.formula);
  return out;
}

}  // namespace nsd
