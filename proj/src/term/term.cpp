#include "nsd/term.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <sstream>

namespace nsd {

struct Term::Node {
  TermKind kind;
  std::string name;
  Type type;
  std::vector<Term> kids;
  std::shared_ptr<const NameList> fv;  // null when closed

  // Long numerals and sequence spines would overflow the stack if released
  // recursively, so uniquely owned children are unlinked iteratively.
  ~Node() {
    std::vector<std::shared_ptr<const Node>> pending;
    auto release = [&](std::vector<Term>& ks) {
      for (auto& k : ks)
        if (k.node_ && k.node_.use_count() == 1) pending.push_back(std::move(k.node_));
    };
    release(kids);
    while (!pending.empty()) {
      auto n = std::move(pending.back());
      pending.pop_back();
      if (n.use_count() == 1) release(const_cast<Node&>(*n).kids);
    }
  }
};

namespace {

const NameList kNoNames;

bool contains(const NameList& names, std::string_view x) {
  return std::binary_search(names.begin(), names.end(), x, std::less<>{});
}

std::shared_ptr<const NameList> merge_free(const std::vector<Term>& kids, const std::string* bound) {
  const NameList* single = nullptr;
  int nonempty = 0;
  for (const auto& k : kids) {
    if (!k.free_vars().empty()) {
      single = &k.free_vars();
      ++nonempty;
    }
  }
  if (nonempty == 0) return nullptr;
  NameList out;
  if (nonempty == 1) {
    out = *single;
  } else {
    for (const auto& k : kids) out.insert(out.end(), k.free_vars().begin(), k.free_vars().end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  if (bound) {
    auto it = std::lower_bound(out.begin(), out.end(), *bound);
    if (it != out.end() && *it == *bound) out.erase(it);
  }
  if (out.empty()) return nullptr;
  return std::make_shared<const NameList>(std::move(out));
}

}  // namespace

Term Term::make(TermKind k, std::string name, Type type, std::vector<Term> kids) {
  std::shared_ptr<const NameList> fv;
  if (k == TermKind::Var) {
    fv = std::make_shared<const NameList>(NameList{name});
  } else {
    fv = merge_free(kids, k == TermKind::Lam ? &name : nullptr);
  }
  return Term(std::make_shared<const Node>(Node{k, std::move(name), std::move(type), std::move(kids), std::move(fv)}));
}

Term::Term() : Term(zero()) {}

Term Term::var(std::string name) { return make(TermKind::Var, std::move(name), Type(), {}); }

Term Term::zero() {
  static const std::shared_ptr<const Node> z =
      std::make_shared<const Node>(Node{TermKind::Zero, {}, Type(), {}, nullptr});
  return Term(z);
}

Term Term::succ(Term t) { return make(TermKind::Succ, {}, Type(), {std::move(t)}); }

Term Term::numeral(std::uint64_t n) {
  Term t = zero();
  for (std::uint64_t i = 0; i < n; ++i) t = succ(std::move(t));
  return t;
}

Term Term::nat_rec(Term base, Term step, Term n) {
  return make(TermKind::NatRec, {}, Type(), {std::move(base), std::move(step), std::move(n)});
}

Term Term::lam(std::string x, Type type, Term body) {
  return make(TermKind::Lam, std::move(x), std::move(type), {std::move(body)});
}

Term Term::app(Term fn, Term arg) { return make(TermKind::App, {}, Type(), {std::move(fn), std::move(arg)}); }

Term Term::app(Term fn, std::span<const Term> args) {
  for (const auto& a : args) fn = app(std::move(fn), a);
  return fn;
}

Term Term::empty_seq(Type element) { return make(TermKind::EmptySeq, {}, std::move(element), {}); }

Term Term::snoc(Term seq, Term elem) { return make(TermKind::Snoc, {}, Type(), {std::move(seq), std::move(elem)}); }

Term Term::seq_rec(Term base, Term step, Term seq) {
  return make(TermKind::SeqRec, {}, Type(), {std::move(base), std::move(step), std::move(seq)});
}

Term Term::bar_rec(Term Y, Term G, Term H, Term s, Type element) {
  return make(TermKind::BarRec, {}, std::move(element), {std::move(Y), std::move(G), std::move(H), std::move(s)});
}

Term Term::len(Term s) { return make(TermKind::Len, {}, Type(), {std::move(s)}); }

Term Term::get(Term s, Term index, Term fallback) {
  return make(TermKind::Get, {}, Type(), {std::move(s), std::move(index), std::move(fallback)});
}

Term Term::concat(Term s, Term t) { return make(TermKind::Concat, {}, Type(), {std::move(s), std::move(t)}); }

Term Term::star(Term Y, std::vector<Term> args) {
  std::vector<Term> kids;
  kids.reserve(args.size() + 1);
  kids.push_back(std::move(Y));
  for (auto& a : args) kids.push_back(std::move(a));
  return make(TermKind::Star, {}, Type(), std::move(kids));
}

Term Term::singleton(Type element, Term x) { return snoc(empty_seq(std::move(element)), std::move(x)); }

Term Term::seq_literal(Type element, std::span<const Term> elems) {
  Term s = empty_seq(std::move(element));
  for (const auto& e : elems) s = snoc(std::move(s), e);
  return s;
}

TermKind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
const Type& Term::type() const { return node_->type; }
std::size_t Term::arity() const { return node_->kids.size(); }
const Term& Term::child(std::size_t i) const { return node_->kids[i]; }
std::span<const Term> Term::children() const { return node_->kids; }

const NameList& Term::free_vars() const { return node_->fv ? *node_->fv : kNoNames; }

bool Term::has_free(std::string_view x) const { return node_->fv && contains(*node_->fv, x); }

std::optional<std::uint64_t> as_numeral(const Term& t) {
  std::uint64_t n = 0;
  const Term* cur = &t;
  while (cur->kind() == TermKind::Succ) {
    ++n;
    cur = &cur->child(0);
  }
  if (cur->kind() != TermKind::Zero) return std::nullopt;
  return n;
}

std::optional<std::vector<Term>> as_seq_literal(const Term& t) {
  std::vector<Term> elems;
  const Term* cur = &t;
  while (cur->kind() == TermKind::Snoc) {
    elems.push_back(cur->child(1));
    cur = &cur->child(0);
  }
  if (cur->kind() != TermKind::EmptySeq) return std::nullopt;
  std::reverse(elems.begin(), elems.end());
  return elems;
}

// ---------------------------------------------------------------------------
// alpha equivalence

namespace {

using BinderStack = std::vector<std::pair<const std::string*, const std::string*>>;

bool alpha_rec(const Term& a, const Term& b, BinderStack& binders) {
  if (a.same(b) && a.closed()) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case TermKind::Var: {
      for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
        bool la = *it->first == a.name();
        bool lb = *it->second == b.name();
        if (la || lb) return la && lb;
      }
      return a.name() == b.name();
    }
    case TermKind::Zero: return true;
    case TermKind::EmptySeq: return a.type() == b.type();
    case TermKind::Lam: {
      if (a.type() != b.type()) return false;
      binders.emplace_back(&a.name(), &b.name());
      bool r = alpha_rec(a.child(0), b.child(0), binders);
      binders.pop_back();
      return r;
    }
    case TermKind::Succ: {
      // Iterate down long numeral chains.
      const Term* x = &a;
      const Term* y = &b;
      while (x->kind() == TermKind::Succ && y->kind() == TermKind::Succ) {
        x = &x->child(0);
        y = &y->child(0);
      }
      return alpha_rec(*x, *y, binders);
    }
    case TermKind::BarRec:
      if (a.type() != b.type()) return false;
      [[fallthrough]];
    default: {
      if (a.arity() != b.arity()) return false;
      for (std::size_t i = 0; i < a.arity(); ++i)
        if (!alpha_rec(a.child(i), b.child(i), binders)) return false;
      return true;
    }
  }
}

}  // namespace

bool alpha_equal(const Term& a, const Term& b) {
  BinderStack binders;
  return alpha_rec(a, b, binders);
}

bool alpha_equal(const Term& a, const Term& b, const std::vector<std::pair<std::string, std::string>>& bound) {
  BinderStack binders;
  binders.reserve(bound.size());
  for (const auto& [x, y] : bound) binders.emplace_back(&x, &y);
  return alpha_rec(a, b, binders);
}

// ---------------------------------------------------------------------------
// fresh names and substitution

std::string fresh_name(std::string_view base, const std::vector<const NameList*>& avoid,
                       std::span<const std::string> extra) {
  std::string stem(base);
  while (stem.size() > 1 && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
  if (stem.empty()) stem = "v";
  auto taken = [&](const std::string& c) {
    for (const auto* names : avoid)
      if (contains(*names, c)) return true;
    return std::find(extra.begin(), extra.end(), c) != extra.end();
  };
  std::string cand(base);
  for (std::uint64_t k = 1; taken(cand); ++k) cand = stem + std::to_string(k);
  return cand;
}

namespace {

bool relevant(const Term& t, const Substitution& sub) {
  const auto& fv = t.free_vars();
  if (fv.empty() || sub.empty()) return false;
  if (sub.size() < fv.size()) {
    for (const auto& [k, _] : sub)
      if (contains(fv, k)) return true;
    return false;
  }
  for (const auto& x : fv)
    if (sub.count(x)) return true;
  return false;
}

Term subst_rec(const Term& t, const Substitution& sub) {
  if (!relevant(t, sub)) return t;
  switch (t.kind()) {
    case TermKind::Var: return sub.find(t.name())->second;
    case TermKind::Lam: {
      const Term& body = t.child(0);
      Substitution inner;
      bool capture = false;
      for (const auto& [k, v] : sub) {
        if (k == t.name() || !body.has_free(k)) continue;
        inner.emplace(k, v);
        if (v.has_free(t.name())) capture = true;
      }
      if (inner.empty()) return t;
      if (!capture) return Term::lam(t.name(), t.type(), subst_rec(body, inner));
      std::vector<const NameList*> avoid{&body.free_vars()};
      std::vector<std::string> keys;
      for (const auto& [k, v] : inner) {
        avoid.push_back(&v.free_vars());
        keys.push_back(k);
      }
      std::string y = fresh_name(t.name(), avoid, keys);
      inner[t.name()] = Term::var(y);
      return Term::lam(y, t.type(), subst_rec(body, inner));
    }
    default: break;
  }
  std::vector<Term> kids;
  kids.reserve(t.arity());
  for (const auto& k : t.children()) kids.push_back(subst_rec(k, sub));
  return rebuild(t, std::move(kids));
}

}  // namespace

Term rebuild(const Term& t, std::vector<Term> kids) {
  switch (t.kind()) {
    case TermKind::Var:
    case TermKind::Zero:
    case TermKind::EmptySeq: return t;
    case TermKind::Lam: return Term::lam(t.name(), t.type(), kids[0]);
    case TermKind::Succ: return Term::succ(kids[0]);
    case TermKind::NatRec: return Term::nat_rec(kids[0], kids[1], kids[2]);
    case TermKind::App: return Term::app(kids[0], kids[1]);
    case TermKind::Snoc: return Term::snoc(kids[0], kids[1]);
    case TermKind::SeqRec: return Term::seq_rec(kids[0], kids[1], kids[2]);
    case TermKind::BarRec: return Term::bar_rec(kids[0], kids[1], kids[2], kids[3], t.type());
    case TermKind::Len: return Term::len(kids[0]);
    case TermKind::Get: return Term::get(kids[0], kids[1], kids[2]);
    case TermKind::Concat: return Term::concat(kids[0], kids[1]);
    case TermKind::Star: {
      Term Y = kids[0];
      kids.erase(kids.begin());
      return Term::star(Y, std::move(kids));
    }
  }
  assert(false);
  return t;
}

Term substitute(const Term& t, const Substitution& sub) { return subst_rec(t, sub); }

Term substitute(const Term& t, const std::string& x, const Term& s) {
  Substitution sub;
  sub.emplace(x, s);
  return subst_rec(t, sub);
}

Term zero_term(const Type& t) {
  switch (t.kind()) {
    case TypeKind::Nat: return Term::zero();
    case TypeKind::Seq: return Term::empty_seq(t.element());
    case TypeKind::Arrow: return Term::lam("z", t.domain(), zero_term(t.codomain()));
  }
  return Term::zero();
}

std::optional<Type> zero_term_type(const Term& t) {
  switch (t.kind()) {
    case TermKind::Zero: return Type::nat();
    case TermKind::EmptySeq: return Type::seq(t.type());
    case TermKind::Lam: {
      if (t.child(0).has_free(t.name())) return std::nullopt;
      auto cod = zero_term_type(t.child(0));
      if (!cod) return std::nullopt;
      return Type::arrow(t.type(), *cod);
    }
    default: return std::nullopt;
  }
}

void collect_names(const Term& t, std::vector<std::string>& out) {
  if (t.kind() == TermKind::Var || t.kind() == TermKind::Lam) out.push_back(t.name());
  if (t.kind() == TermKind::Succ) {
    collect_names(t.child(0), out);
    return;
  }
  for (const auto& k : t.children()) collect_names(k, out);
}

// ---------------------------------------------------------------------------
// printing

namespace {

enum Prec { kLambda = 0, kApp = 1, kAtom = 2 };

void print(std::ostream& os, const Term& t, int prec);

void print_args(std::ostream& os, std::span<const Term> args, const char* sep) {
  bool first = true;
  for (const auto& a : args) {
    if (!first) os << sep;
    first = false;
    print(os, a, kLambda);
  }
}

void print(std::ostream& os, const Term& t, int prec) {
  if (auto n = as_numeral(t)) {
    os << *n;
    return;
  }
  switch (t.kind()) {
    case TermKind::Var: os << t.name(); return;
    case TermKind::Zero: os << 0; return;
    case TermKind::Succ:
      if (prec >= kAtom) os << '(';
      os << "S ";
      print(os, t.child(0), kAtom);
      if (prec >= kAtom) os << ')';
      return;
    case TermKind::Lam:
      if (prec >= kApp) os << '(';
      os << '\\' << t.name() << ':' << t.type() << ". ";
      print(os, t.child(0), kLambda);
      if (prec >= kApp) os << ')';
      return;
    case TermKind::App:
      if (prec >= kAtom) os << '(';
      print(os, t.child(0), kApp);
      os << ' ';
      print(os, t.child(1), kAtom);
      if (prec >= kAtom) os << ')';
      return;
    case TermKind::EmptySeq: os << "<>:" << t.type().atomic_str(); return;
    case TermKind::Snoc:
      if (auto lit = as_seq_literal(t)) {
        os << '<';
        print_args(os, *lit, ", ");
        os << '>';
        return;
      }
      os << "snoc(";
      print_args(os, t.children(), ", ");
      os << ')';
      return;
    case TermKind::NatRec: os << "rec("; print_args(os, t.children(), "; "); os << ')'; return;
    case TermKind::SeqRec: os << "lrec("; print_args(os, t.children(), "; "); os << ')'; return;
    case TermKind::BarRec: os << "br("; print_args(os, t.children(), "; "); os << ')'; return;
    case TermKind::Len: os << "len("; print_args(os, t.children(), ", "); os << ')'; return;
    case TermKind::Get: os << "get("; print_args(os, t.children(), ", "); os << ')'; return;
    case TermKind::Concat: os << "cat("; print_args(os, t.children(), ", "); os << ')'; return;
    case TermKind::Star:
      print(os, t.child(0), kAtom);
      os << '[';
      print_args(os, t.children().subspan(1), ", ");
      os << ']';
      return;
  }
}

}  // namespace

std::string Term::str() const {
  std::ostringstream os;
  print(os, *this, kLambda);
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Term& t) {
  print(os, t, kLambda);
  return os;
}

}  // namespace nsd
