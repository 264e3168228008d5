#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nsd/type.hpp"

namespace nsd {

enum class TermKind : std::uint8_t {
  Var,
  Zero,
  Succ,      // S t
  NatRec,    // rec(base; step; n)
  Lam,       // \x:T. body
  App,       // f a
  EmptySeq,  // <>:T
  Snoc,      // snoc(s, x)
  SeqRec,    // lrec(base; step; s)
  BarRec,    // br(Y; G; H; s), carries the element type of s
  Len,       // len(s)
  Get,       // get(s, i, default)
  Concat,    // cat(s, t)
  Star,      // Y[a1, ..., ak], the bounded application
};

// Sorted, duplicate-free list of variable names.
using NameList = std::vector<std::string>;

// Immutable System T term with finite sequences. Copies share structure.
class Term {
 public:
  Term();  // the constant 0

  static Term var(std::string name);
  static Term zero();
  static Term succ(Term t);
  static Term numeral(std::uint64_t n);
  static Term nat_rec(Term base, Term step, Term n);
  static Term lam(std::string x, Type type, Term body);
  static Term app(Term fn, Term arg);
  static Term app(Term fn, std::span<const Term> args);
  static Term empty_seq(Type element);
  static Term snoc(Term seq, Term elem);
  static Term seq_rec(Term base, Term step, Term seq);
  static Term bar_rec(Term Y, Term G, Term H, Term s, Type element);
  static Term len(Term s);
  static Term get(Term s, Term index, Term fallback);
  static Term concat(Term s, Term t);
  static Term star(Term Y, std::vector<Term> args);
  // {x}
  static Term singleton(Type element, Term x);
  static Term seq_literal(Type element, std::span<const Term> elems);

  TermKind kind() const;
  const std::string& name() const;
  const Type& type() const;
  std::size_t arity() const;
  const Term& child(std::size_t i) const;
  std::span<const Term> children() const;

  const NameList& free_vars() const;
  bool has_free(std::string_view x) const;
  bool closed() const { return free_vars().empty(); }

  // Pointer identity; a cheap shortcut before structural comparison.
  bool same(const Term& o) const { return node_ == o.node_; }

  std::string str() const;

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Term make(TermKind k, std::string name, Type type, std::vector<Term> kids);
  std::shared_ptr<const Node> node_;
};

std::ostream& operator<<(std::ostream& os, const Term& t);

// S^n 0 -> n.
std::optional<std::uint64_t> as_numeral(const Term& t);
// <t0, ..., tk-1> built from snoc over an empty sequence.
std::optional<std::vector<Term>> as_seq_literal(const Term& t);

bool alpha_equal(const Term& a, const Term& b);
// Alpha equality where the pairs in `bound` (outermost first) are binders
// introduced by an enclosing context, e.g. formula quantifiers.
bool alpha_equal(const Term& a, const Term& b, const std::vector<std::pair<std::string, std::string>>& bound);

// Same node kind, name and type as t with new children.
Term rebuild(const Term& t, std::vector<Term> kids);

using Substitution = std::map<std::string, Term, std::less<>>;

// Capture-avoiding simultaneous substitution.
Term substitute(const Term& t, const Substitution& sub);
Term substitute(const Term& t, const std::string& x, const Term& s);

// The canonical inhabitant: 0, <>:s, or \x. zero.
Term zero_term(const Type& t);
// Inverse of zero_term on canonical inhabitants.
std::optional<Type> zero_term_type(const Term& t);

// All variable names occurring in t, bound or free.
void collect_names(const Term& t, std::vector<std::string>& out);

// Binder names that are not free in the given lists. Deterministic: base, base1, base2, ...
std::string fresh_name(std::string_view base, const std::vector<const NameList*>& avoid,
                       std::span<const std::string> extra = {});

}  // namespace nsd
