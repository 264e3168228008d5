#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "nsd/term.hpp"
#include "nsd/typing.hpp"

namespace nsd {

enum class FormulaKind : std::uint8_t {
  Eq,        // t = u at type N
  Pred,      // P(t1, ..., tk)
  False,
  And,
  Or,
  Imp,
  Forall,
  Exists,
  ForallSt,
  ExistsSt,
  St,        // st(t)
};

// Immutable formula tree over Terms. Negation, equivalence and bounded
// quantifiers are derived forms built from these nodes.
class Formula {
 public:
  Formula();  // false

  static Formula eq(Term t, Term u);
  static Formula pred(std::string name, std::vector<Term> args);
  static Formula falsum();
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula imp(Formula a, Formula b);
  static Formula forall(std::string x, Type t, Formula body);
  static Formula exists(std::string x, Type t, Formula body);
  static Formula forall_st(std::string x, Type t, Formula body);
  static Formula exists_st(std::string x, Type t, Formula body);
  static Formula st(Term t);
  static Formula quant(FormulaKind k, std::string x, Type t, Formula body);

  FormulaKind kind() const;
  // Predicate name or bound variable.
  const std::string& name() const;
  // Type of the bound variable.
  const Type& type() const;
  std::span<const Term> terms() const;
  const Term& term(std::size_t i) const { return terms()[i]; }
  const Formula& child(std::size_t i) const;
  std::size_t arity() const;

  bool is_quantifier() const;
  bool is_binary() const;

  const NameList& free_vars() const;
  bool has_free(std::string_view x) const;
  bool closed() const { return free_vars().empty(); }

  std::string str() const;

  friend Formula rebuild(const Formula& f, std::vector<Term> terms, std::vector<Formula> kids);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(FormulaKind k, std::string name, Type type, std::vector<Term> terms, std::vector<Formula> kids);
  std::shared_ptr<const Node> node_;
};

std::ostream& operator<<(std::ostream& os, const Formula& f);

Formula negate(Formula f);
Formula iff(Formula a, Formula b);
// a1 & ... & ak; `true` is 0 = 0.
Formula conj_all(std::span<const Formula> fs);

// No st, forallst or existsst anywhere.
bool is_internal(const Formula& f);

bool alpha_equal(const Formula& a, const Formula& b);

Formula substitute(const Formula& f, const Substitution& sub);
Formula substitute(const Formula& f, const std::string& x, const Term& t);

// Same node with new terms and children.
Formula rebuild(const Formula& f, std::vector<Term> terms, std::vector<Formula> kids);

// All variable names occurring in f (free, bound, or inside terms).
void collect_names(const Formula& f, std::vector<std::string>& out);

// ---------------------------------------------------------------------------
// Decidable predicate symbols.

struct PredicateDecl {
  std::string name;
  std::vector<Type> args;
  std::function<bool(std::span<const std::uint64_t>)> interp;
};

class Signature {
 public:
  // The built-in signature: lt(a, b) is a < b.
  static Signature standard();

  void add(PredicateDecl decl);
  const PredicateDecl* find(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name) != nullptr; }
  const std::vector<PredicateDecl>& decls() const { return decls_; }

 private:
  std::vector<PredicateDecl> decls_;
};

// Type-checks every embedded term and predicate use. Throws TypeError or
// ArityMismatch.
void check_formula(const Signature& sig, const TypingContext& ctx, const Formula& f);

// ---------------------------------------------------------------------------
// Derived formulas.

// Extensional equality at type t.
//   N:       t = u
//   A -> B:  forall z:A. (t z) =_B (u z)
//   A*:      len(t) = len(u) & forall i:N. lt(i, len(t)) -> get(t, i, 0) =_A get(u, i, 0)
Formula eq_formula(const Type& t, const Term& a, const Term& b);
// Same, after checking that both sides have type t in ctx.
Formula eq_formula(const TypingContext& ctx, const Type& t, const Term& a, const Term& b);

// x in s: exists i:N. lt(i, len(s)) & x =_t get(s, i, 0).
Formula mem_formula(const Type& t, const Term& x, const Term& s);

// forall y:t in s. body  and  exists y:t in s. body. `y` is renamed if it
// occurs free in s.
Formula forall_in(const std::string& y, const Type& t, const Term& s, const Formula& body);
Formula exists_in(const std::string& y, const Type& t, const Term& s, const Formula& body);

// Recognizes the shapes built by the functions above.
struct MemMatch {
  Type type;
  Term elem;
  Term seq;
};
std::optional<MemMatch> match_mem(const Formula& f);

struct BoundedMatch {
  std::string var;
  Type type;
  Term seq;
  Formula body;
};
std::optional<BoundedMatch> match_forall_in(const Formula& f);
std::optional<BoundedMatch> match_exists_in(const Formula& f);

}  // namespace nsd
