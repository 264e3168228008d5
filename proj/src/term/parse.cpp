#include "nsd/parse.hpp"

#include <array>

#include "nsd/error.hpp"

namespace nsd {

namespace {

constexpr std::array<std::string_view, 15> kReserved = {
    "S",  "rec", "lrec",   "br",       "snoc", "len",   "get", "cat",
    "in", "st",  "forall", "forallst", "exists", "existsst", "false",
};

bool is_call_keyword(std::string_view w) {
  return w == "rec" || w == "lrec" || w == "br" || w == "snoc" || w == "len" || w == "get" || w == "cat";
}

}  // namespace

bool TermParser::reserved(std::string_view word) {
  for (auto r : kReserved)
    if (r == word) return true;
  return false;
}

Type TermParser::type_atom() {
  Type t;
  if (lex_.accept("(")) {
    t = type();
    lex_.expect(")");
  } else if (lex_.accept("N")) {
    t = Type::nat();
  } else {
    lex_.fail("expected a type");
  }
  while (lex_.accept("*")) t = Type::seq(t);
  return t;
}

Type TermParser::type() {
  Type dom = type_atom();
  if (lex_.accept("->")) return Type::arrow(dom, type());
  return dom;
}

Type TermParser::infer(const Term& t) {
  std::size_t at = lex_.peek().offset;
  try {
    return infer_type(ctx_, t);
  } catch (const TypeError& e) {
    throw ParseError(std::string("ill-typed subterm: ") + e.what(), at);
  }
}

bool TermParser::at_item() const {
  const auto& t = lex_.peek();
  switch (t.kind) {
    case Lexer::Tok::Number: return true;
    case Lexer::Tok::Ident:
      if (t.text == "S") return true;
      if (is_call_keyword(t.text)) return lex_.is("(", 1);
      return !reserved(t.text);
    case Lexer::Tok::Sym: return t.text == "(" || t.text == "<>" || t.text == "<" || t.text == "\\";
    case Lexer::Tok::End: return false;
  }
  return false;
}

Term TermParser::term() {
  if (lex_.accept("\\")) {
    std::string x = lex_.expect_ident();
    if (reserved(x)) lex_.fail("reserved word used as a variable");
    lex_.expect(":");
    Type ty = type();
    lex_.expect(".");
    TypingContext saved = ctx_;
    ctx_.declare(x, ty);
    Term body;
    try {
      body = term();
    } catch (...) {
      ctx_ = std::move(saved);
      throw;
    }
    ctx_ = std::move(saved);
    return Term::lam(x, ty, body);
  }
  return app();
}

Term TermParser::app() {
  if (!at_item()) lex_.fail("expected a term");
  Term t = item();
  while (at_item()) {
    if (lex_.is("\\")) return Term::app(t, term());
    t = Term::app(t, item());
  }
  return t;
}

Term TermParser::item() {
  if (lex_.accept("S")) return Term::succ(item());
  if (lex_.is("\\")) return term();
  return postfix();
}

Term TermParser::postfix() {
  Term t = atom();
  while (lex_.accept("[")) {
    std::vector<Term> args;
    if (!lex_.is("]")) {
      do args.push_back(term());
      while (lex_.accept(","));
    }
    lex_.expect("]");
    t = Term::star(t, std::move(args));
  }
  return t;
}

Term TermParser::atom() {
  const auto tok = lex_.peek();
  if (tok.kind == Lexer::Tok::Number) {
    lex_.next();
    std::uint64_t n = 0;
    for (char c : tok.text) n = n * 10 + static_cast<std::uint64_t>(c - '0');
    return Term::numeral(n);
  }
  if (lex_.accept("(")) {
    Term t = term();
    lex_.expect(")");
    return t;
  }
  if (lex_.accept("<>")) {
    lex_.expect(":");
    return Term::empty_seq(type_atom());
  }
  if (lex_.accept("<")) {
    std::vector<Term> elems;
    do elems.push_back(term());
    while (lex_.accept(","));
    lex_.expect(">");
    return Term::seq_literal(infer(elems.front()), elems);
  }
  if (tok.kind != Lexer::Tok::Ident) lex_.fail("expected a term");
  lex_.next();
  if (!is_call_keyword(tok.text)) {
    if (reserved(tok.text)) throw ParseError("unexpected keyword '" + tok.text + "'", tok.offset);
    return Term::var(tok.text);
  }
  lex_.expect("(");
  const bool semis = tok.text == "rec" || tok.text == "lrec" || tok.text == "br";
  std::vector<Term> args;
  do args.push_back(term());
  while (lex_.accept(semis ? ";" : ","));
  lex_.expect(")");
  auto need = [&](std::size_t n) {
    if (args.size() != n)
      throw ParseError(tok.text + " takes " + std::to_string(n) + " arguments", tok.offset);
  };
  if (tok.text == "rec") {
    need(3);
    return Term::nat_rec(args[0], args[1], args[2]);
  }
  if (tok.text == "lrec") {
    need(3);
    return Term::seq_rec(args[0], args[1], args[2]);
  }
  if (tok.text == "br") {
    need(4);
    Type st = infer(args[3]);
    if (!st.is_seq()) throw ParseError("bar recursion needs a sequence argument", tok.offset);
    return Term::bar_rec(args[0], args[1], args[2], args[3], st.element());
  }
  if (tok.text == "snoc") {
    need(2);
    return Term::snoc(args[0], args[1]);
  }
  if (tok.text == "len") {
    need(1);
    return Term::len(args[0]);
  }
  if (tok.text == "get") {
    need(3);
    return Term::get(args[0], args[1], args[2]);
  }
  need(2);
  return Term::concat(args[0], args[1]);
}

Type parse_type(std::string_view src) {
  Lexer lex(src);
  TermParser p(lex, {});
  Type t = p.type();
  if (!lex.at_end()) lex.fail("trailing input");
  return t;
}

Term parse_term(std::string_view src, const TypingContext& ctx) {
  Lexer lex(src);
  TermParser p(lex, ctx);
  Term t = p.term();
  if (!lex.at_end()) lex.fail("trailing input");
  return t;
}

}  // namespace nsd
