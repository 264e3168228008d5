#pragma once

#include <string_view>

#include "nsd/lexer.hpp"
#include "nsd/term.hpp"
#include "nsd/typing.hpp"

namespace nsd {

// Recursive-descent parser for types and terms.
//
//   type  ::= tatom ['->' type]          tatom ::= 'N' | '(' type ')' | tatom '*'
//   term  ::= '\' x ':' type '.' term | app
//   app   ::= item+                       item  ::= 'S' item | postfix
//   postfix ::= atom ('[' term, ... ']')*
//   atom  ::= digits | x | '(' term ')' | '<>' ':' tatom | '<' term, ... '>'
//           | rec(t; t; t) | lrec(t; t; t) | br(t; t; t; t)
//           | snoc(t, t) | len(t) | get(t, t, t) | cat(t, t)
//
// The parser tracks binder types so that sequence literals and bar recursion
// get their element types; free variables must be declared in the context.
class TermParser {
 public:
  TermParser(Lexer& lex, TypingContext ctx) : lex_(lex), ctx_(std::move(ctx)) {}

  Type type();
  Term term();
  // True when the next token can start an application argument.
  bool at_item() const;

  TypingContext& context() { return ctx_; }

  static bool reserved(std::string_view word);

 private:
  Type type_atom();
  Term app();
  Term item();
  Term postfix();
  Term atom();
  Type infer(const Term& t);

  Lexer& lex_;
  TypingContext ctx_;
};

Type parse_type(std::string_view src);
Term parse_term(std::string_view src, const TypingContext& ctx = {});

}  // namespace nsd
