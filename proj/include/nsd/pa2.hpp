#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nsd/formula.hpp"
#include "nsd/normalize.hpp"

namespace nsd::pa2 {

// Number terms over 0, S, +, * and number variables.
struct NumTerm {
  enum class Kind { Zero, Succ, Add, Mul, Var };
  Kind kind = Kind::Zero;
  std::string name;
  std::vector<NumTerm> args;

  static NumTerm zero();
  static NumTerm succ(NumTerm t);
  static NumTerm add(NumTerm a, NumTerm b);
  static NumTerm mul(NumTerm a, NumTerm b);
  static NumTerm var(std::string n);
  static NumTerm numeral(std::uint64_t n);

  std::string str() const;
  friend bool operator==(const NumTerm&, const NumTerm&) = default;
};

// Second-order arithmetic formulas. Negation is F -> false.
struct Formula2 {
  enum class Kind { Eq, In, False, And, Or, Imp, All, Ex, All2, Ex2 };
  Kind kind = Kind::False;
  // Bound variable, or the set variable of `t in X`.
  std::string name;
  std::vector<NumTerm> terms;
  std::vector<Formula2> kids;

  static Formula2 eq(NumTerm t, NumTerm u);
  static Formula2 in(NumTerm t, std::string set);
  static Formula2 falsum();
  static Formula2 conj(Formula2 a, Formula2 b);
  static Formula2 disj(Formula2 a, Formula2 b);
  static Formula2 imp(Formula2 a, Formula2 b);
  static Formula2 neg(Formula2 a);
  static Formula2 iff(Formula2 a, Formula2 b);
  static Formula2 all(std::string n, Formula2 body);
  static Formula2 ex(std::string n, Formula2 body);
  static Formula2 all2(std::string X, Formula2 body);
  static Formula2 ex2(std::string X, Formula2 body);

  bool is_quantifier() const;
  std::string str() const;
  friend bool operator==(const Formula2&, const Formula2&) = default;
};

struct FreeVars {
  std::set<std::string> numbers;
  std::set<std::string> sets;
};

// Throws ScopeError when a name is used both as a number and as a set
// variable anywhere in f.
FreeVars free_vars(const Formula2& f);
void check_scope(const Formula2& f);

// Grammar:
//   F ::= I ['<->' I]     I ::= O ['->' I]     O ::= A ('|' A)*     A ::= U ('&' U)*
//   U ::= '!' U | ('ALL' | 'EX') n '.' F | ('ALL2' | 'EX2') X '.' F
//       | 'false' | t '=' t | t 'in' X | '(' F ')'
//   t ::= p ('+' p)*      p ::= a ('*' a)*      a ::= 0 | numeral | 'S' a | n | '(' t ')'
// Throws ParseError, or ScopeError for a name used in both sorts.
Formula2 parse_formula2(std::string_view src);

// Numbers become standard naturals, sets internal objects of type N*:
//   ALL n / EX n    -> forallst / existsst n:N
//   ALL2 X / EX2 X  -> forall / exists X:N*
//   t in X          -> mem_formula(N, t, X)
//   + and *         -> the recursion-defined prelude terms
Term embed_term(const NumTerm& t);
Formula embed(const Formula2& f);
// Types of the free variables of embed(f).
TypingContext embed_context(const Formula2& f);

// EX2 X. ALL n. (n in X <-> phi), X fresh. Throws ScopeError unless the free
// variables of phi are among {n}, with n a number variable.
Formula2 comprehension_instance(const Formula2& phi, const std::string& n = "n");

// For quantifier-free phi without set variables: a term \n:N. e with e = 0
// iff phi(n) holds. Throws ScopeError on other free variables, ShapeError on
// quantifiers or set membership.
Term indicator(const Formula2& phi, const std::string& n = "n");

// The computable part of comprehension at bound k: s = char_sequence of the
// indicator, together with the embedded biconditional  n in X <-> phi  (n, X
// free) that s satisfies for every n <= k.
struct ComprehensionAtBound {
  Term indicator;
  Term s;
  std::string set_var;
  Formula biconditional;
};
ComprehensionAtBound comprehension_at_bound(const Formula2& phi, const std::string& n, std::uint64_t k,
                                            std::uint64_t fuel = kDefaultFuel);

}  // namespace nsd::pa2
