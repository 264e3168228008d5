#include "nsd/formula.hpp"

#include <algorithm>
#include <sstream>

#include "nsd/error.hpp"

namespace nsd {

struct Formula::Node {
  FormulaKind kind;
  std::string name;
  Type type;
  std::vector<Term> terms;
  std::vector<Formula> kids;
  NameList fv;
};

namespace {

bool binds(FormulaKind k) {
  return k == FormulaKind::Forall || k == FormulaKind::Exists || k == FormulaKind::ForallSt ||
         k == FormulaKind::ExistsSt;
}

bool contains(const NameList& names, std::string_view x) {
  return std::binary_search(names.begin(), names.end(), x, std::less<>{});
}

}  // namespace

Formula Formula::make(FormulaKind k, std::string name, Type type, std::vector<Term> terms, std::vector<Formula> kids) {
  NameList fv;
  for (const auto& t : terms) fv.insert(fv.end(), t.free_vars().begin(), t.free_vars().end());
  for (const auto& f : kids) fv.insert(fv.end(), f.free_vars().begin(), f.free_vars().end());
  std::sort(fv.begin(), fv.end());
  fv.erase(std::unique(fv.begin(), fv.end()), fv.end());
  if (binds(k)) {
    auto it = std::lower_bound(fv.begin(), fv.end(), name);
    if (it != fv.end() && *it == name) fv.erase(it);
  }
  return Formula(std::make_shared<const Node>(
      Node{k, std::move(name), std::move(type), std::move(terms), std::move(kids), std::move(fv)}));
}

Formula::Formula() : Formula(falsum()) {}

Formula Formula::eq(Term t, Term u) { return make(FormulaKind::Eq, {}, Type(), {std::move(t), std::move(u)}, {}); }
Formula Formula::pred(std::string name, std::vector<Term> args) {
  return make(FormulaKind::Pred, std::move(name), Type(), std::move(args), {});
}
Formula Formula::falsum() {
  static const Formula f = make(FormulaKind::False, {}, Type(), {}, {});
  return f;
}
Formula Formula::conj(Formula a, Formula b) { return make(FormulaKind::And, {}, Type(), {}, {std::move(a), std::move(b)}); }
Formula Formula::disj(Formula a, Formula b) { return make(FormulaKind::Or, {}, Type(), {}, {std::move(a), std::move(b)}); }
Formula Formula::imp(Formula a, Formula b) { return make(FormulaKind::Imp, {}, Type(), {}, {std::move(a), std::move(b)}); }
Formula Formula::quant(FormulaKind k, std::string x, Type t, Formula body) {
  return make(k, std::move(x), std::move(t), {}, {std::move(body)});
}
Formula Formula::forall(std::string x, Type t, Formula body) {
  return quant(FormulaKind::Forall, std::move(x), std::move(t), std::move(body));
}
Formula Formula::exists(std::string x, Type t, Formula body) {
  return quant(FormulaKind::Exists, std::move(x), std::move(t), std::move(body));
}
Formula Formula::forall_st(std::string x, Type t, Formula body) {
  return quant(FormulaKind::ForallSt, std::move(x), std::move(t), std::move(body));
}
Formula Formula::exists_st(std::string x, Type t, Formula body) {
  return quant(FormulaKind::ExistsSt, std::move(x), std::move(t), std::move(body));
}
Formula Formula::st(Term t) { return make(FormulaKind::St, {}, Type(), {std::move(t)}, {}); }

FormulaKind Formula::kind() const { return node_->kind; }
const std::string& Formula::name() const { return node_->name; }
const Type& Formula::type() const { return node_->type; }
std::span<const Term> Formula::terms() const { return node_->terms; }
const Formula& Formula::child(std::size_t i) const { return node_->kids[i]; }
std::size_t Formula::arity() const { return node_->kids.size(); }
bool Formula::is_quantifier() const { return binds(kind()); }
bool Formula::is_binary() const {
  return kind() == FormulaKind::And || kind() == FormulaKind::Or || kind() == FormulaKind::Imp;
}
const NameList& Formula::free_vars() const { return node_->fv; }
bool Formula::has_free(std::string_view x) const { return contains(node_->fv, x); }

Formula negate(Formula f) { return Formula::imp(std::move(f), Formula::falsum()); }
Formula iff(Formula a, Formula b) { return Formula::conj(Formula::imp(a, b), Formula::imp(b, a)); }

Formula conj_all(std::span<const Formula> fs) {
  if (fs.empty()) return Formula::eq(Term::zero(), Term::zero());
  Formula out = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) out = Formula::conj(out, fs[i]);
  return out;
}

bool is_internal(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::St:
    case FormulaKind::ForallSt:
    case FormulaKind::ExistsSt: return false;
    default:
      for (std::size_t i = 0; i < f.arity(); ++i)
        if (!is_internal(f.child(i))) return false;
      return true;
  }
}

Formula rebuild(const Formula& f, std::vector<Term> terms, std::vector<Formula> kids) {
  return Formula::make(f.kind(), f.name(), f.type(), std::move(terms), std::move(kids));
}

// ---------------------------------------------------------------------------
// alpha equality

namespace {

using Bound = std::vector<std::pair<std::string, std::string>>;

bool alpha_rec(const Formula& a, const Formula& b, Bound& bound) {
  if (a.kind() != b.kind()) return false;
  if (a.kind() == FormulaKind::Pred && a.name() != b.name()) return false;
  if (a.terms().size() != b.terms().size() || a.arity() != b.arity()) return false;
  for (std::size_t i = 0; i < a.terms().size(); ++i)
    if (!alpha_equal(a.term(i), b.term(i), bound)) return false;
  if (a.is_quantifier()) {
    if (a.type() != b.type()) return false;
    bound.emplace_back(a.name(), b.name());
    bool r = alpha_rec(a.child(0), b.child(0), bound);
    bound.pop_back();
    return r;
  }
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (!alpha_rec(a.child(i), b.child(i), bound)) return false;
  return true;
}

}  // namespace

bool alpha_equal(const Formula& a, const Formula& b) {
  Bound bound;
  return alpha_rec(a, b, bound);
}

// ---------------------------------------------------------------------------
// substitution

namespace {

bool relevant(const Formula& f, const Substitution& sub) {
  for (const auto& [x, _] : sub)
    if (f.has_free(x)) return true;
  return false;
}

Formula subst_rec(const Formula& f, const Substitution& sub) {
  if (!relevant(f, sub)) return f;
  if (f.is_quantifier()) {
    Substitution inner;
    std::vector<const NameList*> avoid{&f.child(0).free_vars()};
    std::vector<std::string> keys;
    bool capture = false;
    for (const auto& [x, t] : sub) {
      if (x == f.name() || !f.child(0).has_free(x)) continue;
      inner.emplace(x, t);
      avoid.push_back(&t.free_vars());
      keys.push_back(x);
      if (t.has_free(f.name())) capture = true;
    }
    if (inner.empty()) return f;
    std::string y = f.name();
    if (capture) {
      y = fresh_name(f.name(), avoid, keys);
      inner[f.name()] = Term::var(y);
    }
    return Formula::quant(f.kind(), y, f.type(), subst_rec(f.child(0), inner));
  }
  std::vector<Term> terms;
  for (const auto& t : f.terms()) terms.push_back(substitute(t, sub));
  std::vector<Formula> kids;
  for (std::size_t i = 0; i < f.arity(); ++i) kids.push_back(subst_rec(f.child(i), sub));
  return rebuild(f, std::move(terms), std::move(kids));
}

}  // namespace

Formula substitute(const Formula& f, const Substitution& sub) { return subst_rec(f, sub); }

Formula substitute(const Formula& f, const std::string& x, const Term& t) {
  Substitution sub;
  sub.emplace(x, t);
  return subst_rec(f, sub);
}

void collect_names(const Formula& f, std::vector<std::string>& out) {
  if (f.is_quantifier()) out.push_back(f.name());
  for (const auto& t : f.terms()) collect_names(t, out);
  for (std::size_t i = 0; i < f.arity(); ++i) collect_names(f.child(i), out);
}

// ---------------------------------------------------------------------------
// signature and checking

Signature Signature::standard() {
  Signature s;
  s.add({"lt", {Type::nat(), Type::nat()}, [](std::span<const std::uint64_t> a) { return a[0] < a[1]; }});
  return s;
}

void Signature::add(PredicateDecl decl) {
  for (auto& d : decls_) {
    if (d.name == decl.name) {
      d = std::move(decl);
      return;
    }
  }
  decls_.push_back(std::move(decl));
}

const PredicateDecl* Signature::find(std::string_view name) const {
  for (const auto& d : decls_)
    if (d.name == name) return &d;
  return nullptr;
}

void check_formula(const Signature& sig, const TypingContext& ctx, const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Eq:
      for (const auto& t : f.terms()) {
        Type ty = infer_type(ctx, t);
        if (!ty.is_nat())
          throw TypeError(TypeErrorKind::ArgumentMismatch, t.str(), "equation side has type " + ty.str() + ", expected N");
      }
      return;
    case FormulaKind::Pred: {
      const PredicateDecl* d = sig.find(f.name());
      if (!d) throw TypeError(TypeErrorKind::UnboundVariable, f.name(), "unknown predicate " + f.name());
      if (d->args.size() != f.terms().size())
        throw ArityMismatch("predicate " + f.name() + " takes " + std::to_string(d->args.size()) + " arguments");
      for (std::size_t i = 0; i < d->args.size(); ++i) {
        Type ty = infer_type(ctx, f.term(i));
        if (ty != d->args[i])
          throw TypeError(TypeErrorKind::ArgumentMismatch, f.term(i).str(),
                          "argument of " + f.name() + " has type " + ty.str() + ", expected " + d->args[i].str());
      }
      return;
    }
    case FormulaKind::St: infer_type(ctx, f.term(0)); return;
    case FormulaKind::False: return;
    default:
      if (f.is_quantifier()) {
        check_formula(sig, ctx.with(f.name(), f.type()), f.child(0));
        return;
      }
      for (std::size_t i = 0; i < f.arity(); ++i) check_formula(sig, ctx, f.child(i));
  }
}

// ---------------------------------------------------------------------------
// derived formulas

Formula eq_formula(const Type& t, const Term& a, const Term& b) {
  switch (t.kind()) {
    case TypeKind::Nat: return Formula::eq(a, b);
    case TypeKind::Arrow: {
      std::string z = fresh_name("z", {&a.free_vars(), &b.free_vars()});
      Term v = Term::var(z);
      return Formula::forall(z, t.domain(), eq_formula(t.codomain(), Term::app(a, v), Term::app(b, v)));
    }
    case TypeKind::Seq: {
      std::string i = fresh_name("i", {&a.free_vars(), &b.free_vars()});
      Term iv = Term::var(i);
      Term d = zero_term(t.element());
      Formula lengths = Formula::eq(Term::len(a), Term::len(b));
      Formula comps = Formula::forall(
          i, Type::nat(),
          Formula::imp(Formula::pred("lt", {iv, Term::len(a)}),
                       eq_formula(t.element(), Term::get(a, iv, d), Term::get(b, iv, d))));
      return Formula::conj(lengths, comps);
    }
  }
  return Formula::eq(a, b);
}

Formula eq_formula(const TypingContext& ctx, const Type& t, const Term& a, const Term& b) {
  for (const Term* side : {&a, &b}) {
    Type ty = infer_type(ctx, *side);
    if (ty != t)
      throw TypeError(TypeErrorKind::ArgumentMismatch, side->str(),
                      "equality at " + t.str() + " applied to a term of type " + ty.str());
  }
  return eq_formula(t, a, b);
}

Formula mem_formula(const Type& t, const Term& x, const Term& s) {
  std::string i = fresh_name("i", {&x.free_vars(), &s.free_vars()});
  Term iv = Term::var(i);
  return Formula::exists(i, Type::nat(),
                         Formula::conj(Formula::pred("lt", {iv, Term::len(s)}),
                                       eq_formula(t, x, Term::get(s, iv, zero_term(t)))));
}

namespace {

std::string binder_for(const std::string& y, const Term& s, const Formula& body) {
  if (!s.has_free(y)) return y;
  std::vector<std::string> extra;
  collect_names(body, extra);
  return fresh_name(y, {&s.free_vars(), &body.free_vars()}, extra);
}

}  // namespace

Formula forall_in(const std::string& y, const Type& t, const Term& s, const Formula& body) {
  std::string z = binder_for(y, s, body);
  Formula b = z == y ? body : substitute(body, y, Term::var(z));
  return Formula::forall(z, t, Formula::imp(mem_formula(t, Term::var(z), s), b));
}

Formula exists_in(const std::string& y, const Type& t, const Term& s, const Formula& body) {
  std::string z = binder_for(y, s, body);
  Formula b = z == y ? body : substitute(body, y, Term::var(z));
  return Formula::exists(z, t, Formula::conj(mem_formula(t, Term::var(z), s), b));
}

namespace {

const Term* find_get_default(const Formula& f, const std::string& i);

const Term* find_get_default(const Term& t, const std::string& i) {
  if (t.kind() == TermKind::Get && t.child(1).kind() == TermKind::Var && t.child(1).name() == i) return &t.child(2);
  for (const auto& k : t.children())
    if (auto* d = find_get_default(k, i)) return d;
  return nullptr;
}

const Term* find_get_default(const Formula& f, const std::string& i) {
  for (const auto& t : f.terms())
    if (auto* d = find_get_default(t, i)) return d;
  for (std::size_t k = 0; k < f.arity(); ++k) {
    if (f.child(k).is_quantifier() && f.child(k).name() == i) continue;
    if (auto* d = find_get_default(f.child(k), i)) return d;
  }
  return nullptr;
}

// The left side x of a formula shaped like eq_formula(t, x, _).
std::optional<Term> eq_left(const Type& t, const Formula& f) {
  switch (t.kind()) {
    case TypeKind::Nat:
      if (f.kind() != FormulaKind::Eq) return std::nullopt;
      return f.term(0);
    case TypeKind::Arrow: {
      if (f.kind() != FormulaKind::Forall) return std::nullopt;
      auto inner = eq_left(t.codomain(), f.child(0));
      if (!inner || inner->kind() != TermKind::App) return std::nullopt;
      const Term& arg = inner->child(1);
      if (arg.kind() != TermKind::Var || arg.name() != f.name() || inner->child(0).has_free(f.name()))
        return std::nullopt;
      return inner->child(0);
    }
    case TypeKind::Seq: {
      if (f.kind() != FormulaKind::And || f.child(0).kind() != FormulaKind::Eq) return std::nullopt;
      const Term& l = f.child(0).term(0);
      if (l.kind() != TermKind::Len) return std::nullopt;
      return l.child(0);
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<MemMatch> match_mem(const Formula& f) {
  if (f.kind() != FormulaKind::Exists || !f.type().is_nat()) return std::nullopt;
  const Formula& body = f.child(0);
  if (body.kind() != FormulaKind::And) return std::nullopt;
  const Formula& guard = body.child(0);
  if (guard.kind() != FormulaKind::Pred || guard.name() != "lt" || guard.terms().size() != 2) return std::nullopt;
  const std::string& i = f.name();
  const Term& iv = guard.term(0);
  if (iv.kind() != TermKind::Var || iv.name() != i) return std::nullopt;
  if (guard.term(1).kind() != TermKind::Len) return std::nullopt;
  const Term& s = guard.term(1).child(0);
  if (s.has_free(i)) return std::nullopt;
  const Term* d = find_get_default(body.child(1), i);
  if (!d) return std::nullopt;
  auto t = zero_term_type(*d);
  if (!t) return std::nullopt;
  auto x = eq_left(*t, body.child(1));
  if (!x || x->has_free(i)) return std::nullopt;
  if (!alpha_equal(body.child(1), eq_formula(*t, *x, Term::get(s, iv, *d)))) return std::nullopt;
  return MemMatch{*t, *x, s};
}

std::optional<BoundedMatch> match_forall_in(const Formula& f) {
  if (f.kind() != FormulaKind::Forall || f.child(0).kind() != FormulaKind::Imp) return std::nullopt;
  auto m = match_mem(f.child(0).child(0));
  if (!m || m->type != f.type() || m->elem.kind() != TermKind::Var || m->elem.name() != f.name() ||
      m->seq.has_free(f.name()))
    return std::nullopt;
  return BoundedMatch{f.name(), f.type(), m->seq, f.child(0).child(1)};
}

std::optional<BoundedMatch> match_exists_in(const Formula& f) {
  if (f.kind() != FormulaKind::Exists || f.child(0).kind() != FormulaKind::And) return std::nullopt;
  auto m = match_mem(f.child(0).child(0));
  if (!m || m->type != f.type() || m->elem.kind() != TermKind::Var || m->elem.name() != f.name() ||
      m->seq.has_free(f.name()))
    return std::nullopt;
  return BoundedMatch{f.name(), f.type(), m->seq, f.child(0).child(1)};
}

// ---------------------------------------------------------------------------
// printing

namespace {

enum Level { kQuant = 0, kOr = 1, kAnd = 2, kUnary = 3 };

const char* quant_word(FormulaKind k) {
  switch (k) {
    case FormulaKind::Forall: return "forall";
    case FormulaKind::Exists: return "exists";
    case FormulaKind::ForallSt: return "forallst";
    case FormulaKind::ExistsSt: return "existsst";
    default: return "?";
  }
}

void print(std::ostream& os, const Formula& f, int level) {
  auto open = [&](int need) {
    if (level > need) os << '(';
  };
  auto close = [&](int need) {
    if (level > need) os << ')';
  };
  if (auto m = match_mem(f)) {
    os << m->elem << " in " << m->seq;
    return;
  }
  std::optional<BoundedMatch> bq = match_forall_in(f);
  const char* bword = "forall";
  if (!bq) {
    bq = match_exists_in(f);
    bword = "exists";
  }
  if (bq) {
    open(kQuant);
    os << bword << ' ' << bq->var << ':' << bq->type << " in " << bq->seq << ". ";
    print(os, bq->body, kQuant);
    close(kQuant);
    return;
  }
  switch (f.kind()) {
    case FormulaKind::Eq: os << f.term(0) << " = " << f.term(1); return;
    case FormulaKind::Pred: {
      os << f.name() << '(';
      for (std::size_t i = 0; i < f.terms().size(); ++i) os << (i ? ", " : "") << f.term(i);
      os << ')';
      return;
    }
    case FormulaKind::False: os << "false"; return;
    case FormulaKind::St: os << "st(" << f.term(0) << ')'; return;
    case FormulaKind::And:
      open(kAnd);
      print(os, f.child(0), kAnd);
      os << " & ";
      print(os, f.child(1), kUnary);
      close(kAnd);
      return;
    case FormulaKind::Or:
      open(kOr);
      print(os, f.child(0), kOr);
      os << " | ";
      print(os, f.child(1), kAnd);
      close(kOr);
      return;
    case FormulaKind::Imp:
      if (f.child(1).kind() == FormulaKind::False) {
        os << '!';
        print(os, f.child(0), kUnary);
        return;
      }
      open(kQuant);
      print(os, f.child(0), kOr);
      os << " -> ";
      print(os, f.child(1), kQuant);
      close(kQuant);
      return;
    default:
      open(kQuant);
      os << quant_word(f.kind()) << ' ' << f.name() << ':' << f.type() << ". ";
      print(os, f.child(0), kQuant);
      close(kQuant);
      return;
  }
}

}  // namespace

std::string Formula::str() const {
  std::ostringstream os;
  print(os, *this, kQuant);
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Formula& f) {
  print(os, f, kQuant);
  return os;
}

}  // namespace nsd
