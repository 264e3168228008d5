#pragma once

#include <string_view>

#include "nsd/formula.hpp"

namespace nsd {

// Formula grammar, loosest binding first:
//
//   F ::= Q x:T. F | Q x:T in t. F | I ['<->' I]
//   I ::= O ['->' I]      O ::= A ('|' A)*      A ::= U ('&' U)*
//   U ::= '!' U | Q ... | atom
//   atom ::= 'false' | 'st' '(' t ')' | P '(' t, ... ')' | t '=' t | t 'in' t | '(' F ')'
//
// with Q one of forall, exists, forallst, existsst (`in` only for the
// internal two). Predicates must be declared in the signature.
Formula parse_formula(std::string_view src, const Signature& sig = Signature::standard(),
                      const TypingContext& ctx = {});

// A formula file: optional declarations, each ending in `;`, then a formula.
//   pred R(N, N);      declares a predicate symbol (interpreted by instances)
//   var a : N -> N;    declares a free variable
struct FormulaFile {
  Signature sig;
  TypingContext ctx;
  Formula formula;
};
FormulaFile parse_formula_file(std::string_view src);

}  // namespace nsd
