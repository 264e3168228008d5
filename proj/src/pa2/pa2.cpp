#include "nsd/pa2.hpp"

#include <map>
#include <sstream>

#include "nsd/error.hpp"
#include "nsd/lexer.hpp"
#include "nsd/prelude.hpp"
#include "nsd/realizer.hpp"

namespace nsd::pa2 {

namespace {

const Type N = Type::nat();

enum class Sort { Number, Set };

using Kind = Formula2::Kind;

Formula2 node(Kind k, std::string name, std::vector<NumTerm> terms, std::vector<Formula2> kids) {
  Formula2 f;
  f.kind = k;
  f.name = std::move(name);
  f.terms = std::move(terms);
  f.kids = std::move(kids);
  return f;
}

NumTerm tnode(NumTerm::Kind k, std::string name, std::vector<NumTerm> args) {
  NumTerm t;
  t.kind = k;
  t.name = std::move(name);
  t.args = std::move(args);
  return t;
}

// Records the sort of every name; a second sort is a scope error.
class Sorts {
 public:
  void use(const std::string& x, Sort s) {
    auto [it, fresh] = sorts_.emplace(x, s);
    if (!fresh && it->second != s)
      throw ScopeError("'" + x + "' is used both as a number and as a set variable");
  }
  void term(const NumTerm& t) {
    if (t.kind == NumTerm::Kind::Var) use(t.name, Sort::Number);
    for (const auto& a : t.args) term(a);
  }
  void formula(const Formula2& f) {
    for (const auto& t : f.terms) term(t);
    switch (f.kind) {
      case Kind::In: use(f.name, Sort::Set); break;
      case Kind::All:
      case Kind::Ex: use(f.name, Sort::Number); break;
      case Kind::All2:
      case Kind::Ex2: use(f.name, Sort::Set); break;
      default: break;
    }
    for (const auto& k : f.kids) formula(k);
  }
  bool has(const std::string& x) const { return sorts_.count(x) > 0; }

 private:
  std::map<std::string, Sort> sorts_;
};

void free_term(const NumTerm& t, const std::set<std::string>& bound, FreeVars& out) {
  if (t.kind == NumTerm::Kind::Var && !bound.count(t.name)) out.numbers.insert(t.name);
  for (const auto& a : t.args) free_term(a, bound, out);
}

void free_formula(const Formula2& f, std::set<std::string> bound, FreeVars& out) {
  for (const auto& t : f.terms) free_term(t, bound, out);
  if (f.kind == Kind::In && !bound.count(f.name)) out.sets.insert(f.name);
  if (f.is_quantifier()) bound.insert(f.name);
  for (const auto& k : f.kids) free_formula(k, bound, out);
}

// ---------------------------------------------------------------------------
// Printing.

void print_term(std::ostream& os, const NumTerm& t, int level) {
  using K = NumTerm::Kind;
  switch (t.kind) {
    case K::Zero: os << "0"; return;
    case K::Var: os << t.name; return;
    case K::Succ: {
      std::uint64_t k = 0;
      const NumTerm* cur = &t;
      while (cur->kind == K::Succ) {
        ++k;
        cur = &cur->args[0];
      }
      if (cur->kind == K::Zero) {
        os << k;
        return;
      }
      os << "S ";
      print_term(os, t.args[0], 2);
      return;
    }
    case K::Add:
    case K::Mul: {
      int mine = t.kind == K::Add ? 0 : 1;
      if (level > mine) os << "(";
      print_term(os, t.args[0], mine);
      os << (t.kind == K::Add ? " + " : " * ");
      print_term(os, t.args[1], mine + 1);
      if (level > mine) os << ")";
      return;
    }
  }
}

// Levels: 0 top, 1 ->, 2 |, 3 &, 4 unary.
void print(std::ostream& os, const Formula2& f, int level) {
  switch (f.kind) {
    case Kind::Eq:
      print_term(os, f.terms[0], 0);
      os << " = ";
      print_term(os, f.terms[1], 0);
      return;
    case Kind::In:
      print_term(os, f.terms[0], 0);
      os << " in " << f.name;
      return;
    case Kind::False: os << "false"; return;
    case Kind::Imp:
      if (f.kids[1].kind == Kind::False) {
        os << "!";
        print(os, f.kids[0], 4);
        return;
      }
      [[fallthrough]];
    case Kind::And:
    case Kind::Or: {
      int mine = f.kind == Kind::Imp ? 1 : f.kind == Kind::Or ? 2 : 3;
      const char* op = f.kind == Kind::Imp ? " -> " : f.kind == Kind::Or ? " | " : " & ";
      bool paren = level > mine;
      if (paren) os << "(";
      print(os, f.kids[0], mine + 1);
      os << op;
      print(os, f.kids[1], f.kind == Kind::Imp ? mine : mine + 1);
      if (paren) os << ")";
      return;
    }
    default: {
      static const std::map<Kind, const char*> kw = {
          {Kind::All, "ALL"}, {Kind::Ex, "EX"}, {Kind::All2, "ALL2"}, {Kind::Ex2, "EX2"}};
      if (level > 0) os << "(";
      os << kw.at(f.kind) << " " << f.name << ". ";
      print(os, f.kids[0], 0);
      if (level > 0) os << ")";
    }
  }
}

// ---------------------------------------------------------------------------
// Parsing.

bool keyword(const std::string& s) {
  return s == "ALL" || s == "EX" || s == "ALL2" || s == "EX2" || s == "false" || s == "in" || s == "S";
}

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) {}

  Formula2 top() {
    Formula2 f = iff();
    if (!lex_.at_end()) lex_.fail("unexpected input after formula");
    sorts_.formula(f);
    return f;
  }

 private:
  std::string name() {
    std::string x = lex_.expect_ident();
    if (keyword(x)) lex_.fail("reserved word '" + x + "' used as a variable");
    return x;
  }

  Formula2 iff() {
    Formula2 a = imp();
    if (lex_.accept("<->")) return Formula2::iff(a, imp());
    return a;
  }
  Formula2 imp() {
    Formula2 a = disj();
    if (lex_.accept("->")) return Formula2::imp(a, imp());
    return a;
  }
  Formula2 disj() {
    Formula2 a = conj();
    while (lex_.accept("|")) a = Formula2::disj(a, conj());
    return a;
  }
  Formula2 conj() {
    Formula2 a = unary();
    while (lex_.accept("&")) a = Formula2::conj(a, unary());
    return a;
  }
  Formula2 unary() {
    if (lex_.accept("!")) return Formula2::neg(unary());
    for (auto [kw, k] : {std::pair{"ALL", Kind::All}, {"EX", Kind::Ex}, {"ALL2", Kind::All2}, {"EX2", Kind::Ex2}}) {
      if (lex_.accept(kw)) {
        std::string x = name();
        lex_.expect(".");
        return node(k, x, {}, {iff()});
      }
    }
    if (lex_.accept("false")) return Formula2::falsum();
    if (lex_.is("(")) {
      auto m = lex_.mark();
      try {
        return atom();
      } catch (const ParseError&) {
        lex_.reset(m);
      }
      lex_.expect("(");
      Formula2 f = iff();
      lex_.expect(")");
      return f;
    }
    return atom();
  }
  Formula2 atom() {
    NumTerm t = term();
    if (lex_.accept("=")) return Formula2::eq(t, term());
    if (lex_.accept("in")) return Formula2::in(t, name());
    lex_.fail("expected '=' or 'in'");
  }

  NumTerm term() {
    NumTerm a = product();
    while (lex_.accept("+")) a = NumTerm::add(a, product());
    return a;
  }
  NumTerm product() {
    NumTerm a = atom_term();
    while (lex_.accept("*")) a = NumTerm::mul(a, atom_term());
    return a;
  }
  NumTerm atom_term() {
    const auto& tok = lex_.peek();
    if (tok.kind == Lexer::Tok::Number) {
      std::uint64_t v = std::stoull(lex_.next().text);
      return NumTerm::numeral(v);
    }
    if (lex_.accept("S")) return NumTerm::succ(atom_term());
    if (lex_.accept("(")) {
      NumTerm t = term();
      lex_.expect(")");
      return t;
    }
    return NumTerm::var(name());
  }

  Lexer lex_;
  Sorts sorts_;
};

// 0/1 valued code of a quantifier-free formula: 0 iff it holds.
Term code(const Formula2& f) {
  auto sg = [](const Term& e) { return prelude::ifz(e, Term::zero(), Term::numeral(1), N); };
  auto app2 = [](const Term& g, const Term& a, const Term& b) { return Term::app(Term::app(g, a), b); };
  switch (f.kind) {
    case Kind::Eq: return sg(prelude::eq(embed_term(f.terms[0]), embed_term(f.terms[1])));
    case Kind::False: return Term::numeral(1);
    case Kind::And: return sg(prelude::add(code(f.kids[0]), code(f.kids[1])));
    case Kind::Or: return prelude::mul(code(f.kids[0]), code(f.kids[1]));
    case Kind::Imp: return prelude::mul(app2(prelude::monus(), Term::numeral(1), code(f.kids[0])), code(f.kids[1]));
    case Kind::In: throw ShapeError("indicator of a formula with set membership: " + f.str());
    default: throw ShapeError("indicator of a formula with quantifiers: " + f.str());
  }
}

}  // namespace

// ---------------------------------------------------------------------------

NumTerm NumTerm::zero() { return {}; }
NumTerm NumTerm::succ(NumTerm t) { return tnode(Kind::Succ, "", {std::move(t)}); }
NumTerm NumTerm::add(NumTerm a, NumTerm b) { return tnode(Kind::Add, "", {std::move(a), std::move(b)}); }
NumTerm NumTerm::mul(NumTerm a, NumTerm b) { return tnode(Kind::Mul, "", {std::move(a), std::move(b)}); }
NumTerm NumTerm::var(std::string n) { return tnode(Kind::Var, std::move(n), {}); }
NumTerm NumTerm::numeral(std::uint64_t n) {
  NumTerm t = zero();
  for (std::uint64_t i = 0; i < n; ++i) t = succ(std::move(t));
  return t;
}

std::string NumTerm::str() const {
  std::ostringstream os;
  print_term(os, *this, 0);
  return os.str();
}

Formula2 Formula2::eq(NumTerm t, NumTerm u) { return node(Kind::Eq, "", {std::move(t), std::move(u)}, {}); }
Formula2 Formula2::in(NumTerm t, std::string set) { return node(Kind::In, std::move(set), {std::move(t)}, {}); }
Formula2 Formula2::falsum() { return {}; }
Formula2 Formula2::conj(Formula2 a, Formula2 b) { return node(Kind::And, "", {}, {std::move(a), std::move(b)}); }
Formula2 Formula2::disj(Formula2 a, Formula2 b) { return node(Kind::Or, "", {}, {std::move(a), std::move(b)}); }
Formula2 Formula2::imp(Formula2 a, Formula2 b) { return node(Kind::Imp, "", {}, {std::move(a), std::move(b)}); }
Formula2 Formula2::neg(Formula2 a) { return imp(std::move(a), falsum()); }
Formula2 Formula2::iff(Formula2 a, Formula2 b) { return conj(imp(a, b), imp(b, a)); }
Formula2 Formula2::all(std::string n, Formula2 body) { return node(Kind::All, std::move(n), {}, {std::move(body)}); }
Formula2 Formula2::ex(std::string n, Formula2 body) { return node(Kind::Ex, std::move(n), {}, {std::move(body)}); }
Formula2 Formula2::all2(std::string X, Formula2 body) { return node(Kind::All2, std::move(X), {}, {std::move(body)}); }
Formula2 Formula2::ex2(std::string X, Formula2 body) { return node(Kind::Ex2, std::move(X), {}, {std::move(body)}); }

bool Formula2::is_quantifier() const {
  return kind == Kind::All || kind == Kind::Ex || kind == Kind::All2 || kind == Kind::Ex2;
}

std::string Formula2::str() const {
  std::ostringstream os;
  print(os, *this, 0);
  return os.str();
}

void check_scope(const Formula2& f) { Sorts().formula(f); }

FreeVars free_vars(const Formula2& f) {
  check_scope(f);
  FreeVars out;
  free_formula(f, {}, out);
  return out;
}

Formula2 parse_formula2(std::string_view src) { return Parser(src).top(); }

Term embed_term(const NumTerm& t) {
  switch (t.kind) {
    case NumTerm::Kind::Zero: return Term::zero();
    case NumTerm::Kind::Succ: return Term::succ(embed_term(t.args[0]));
    case NumTerm::Kind::Add: return prelude::add(embed_term(t.args[0]), embed_term(t.args[1]));
    case NumTerm::Kind::Mul: return prelude::mul(embed_term(t.args[0]), embed_term(t.args[1]));
    case NumTerm::Kind::Var: return Term::var(t.name);
  }
  return Term::zero();
}

namespace {

Formula embed_unchecked(const Formula2& f) {
  const Type Ns = Type::seq(N);
  auto kid = [&](std::size_t i) { return embed_unchecked(f.kids[i]); };
  switch (f.kind) {
    case Kind::Eq: return Formula::eq(embed_term(f.terms[0]), embed_term(f.terms[1]));
    case Kind::In: return mem_formula(N, embed_term(f.terms[0]), Term::var(f.name));
    case Kind::False: return Formula::falsum();
    case Kind::And: return Formula::conj(kid(0), kid(1));
    case Kind::Or: return Formula::disj(kid(0), kid(1));
    case Kind::Imp: return Formula::imp(kid(0), kid(1));
    case Kind::All: return Formula::forall_st(f.name, N, kid(0));
    case Kind::Ex: return Formula::exists_st(f.name, N, kid(0));
    case Kind::All2: return Formula::forall(f.name, Ns, kid(0));
    case Kind::Ex2: return Formula::exists(f.name, Ns, kid(0));
  }
  return Formula::falsum();
}

}  // namespace

Formula embed(const Formula2& f) {
  check_scope(f);
  return embed_unchecked(f);
}

TypingContext embed_context(const Formula2& f) {
  FreeVars fv = free_vars(f);
  TypingContext ctx;
  for (const auto& n : fv.numbers) ctx.declare(n, N);
  for (const auto& X : fv.sets) ctx.declare(X, Type::seq(N));
  return ctx;
}

namespace {

void require_only(const Formula2& phi, const std::string& n) {
  FreeVars fv = free_vars(phi);
  if (!fv.sets.empty()) throw ScopeError("free set variable " + *fv.sets.begin() + " in " + phi.str());
  for (const auto& x : fv.numbers)
    if (x != n) throw ScopeError("free number variable " + x + " other than " + n + " in " + phi.str());
  Sorts s;
  s.formula(phi);
  s.use(n, Sort::Number);
}

std::string fresh_set(const Formula2& phi, const std::string& n) {
  Sorts s;
  s.formula(phi);
  if (!s.has("X") && n != "X") return "X";
  for (int k = 1;; ++k) {
    std::string X = "X" + std::to_string(k);
    if (!s.has(X) && n != X) return X;
  }
}

}  // namespace

Formula2 comprehension_instance(const Formula2& phi, const std::string& n) {
  require_only(phi, n);
  std::string X = fresh_set(phi, n);
  return Formula2::ex2(X, Formula2::all(n, Formula2::iff(Formula2::in(NumTerm::var(n), X), phi)));
}

Term indicator(const Formula2& phi, const std::string& n) {
  require_only(phi, n);
  return Term::lam(n, N, code(phi));
}

ComprehensionAtBound comprehension_at_bound(const Formula2& phi, const std::string& n, std::uint64_t k,
                                            std::uint64_t fuel) {
  ComprehensionAtBound out{indicator(phi, n), {}, fresh_set(phi, n), {}};
  out.s = char_sequence(out.indicator, k, fuel);
  out.biconditional = iff(mem_formula(N, Term::var(n), Term::var(out.set_var)), embed(phi));
  return out;
}

}  // namespace nsd::pa2
