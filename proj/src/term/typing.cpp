#include "nsd/typing.hpp"

#include <algorithm>

#include "nsd/error.hpp"

namespace nsd {

TypingContext::TypingContext(std::initializer_list<std::pair<std::string, Type>> decls) {
  for (const auto& [n, t] : decls) declare(n, t);
}

void TypingContext::declare(const std::string& name, const Type& type) {
  for (auto& e : entries_) {
    if (e.first == name) {
      e.second = type;
      return;
    }
  }
  entries_.emplace_back(name, type);
}

TypingContext TypingContext::with(const std::string& name, const Type& type) const {
  TypingContext c = *this;
  c.declare(name, type);
  return c;
}

std::optional<Type> TypingContext::lookup(std::string_view name) const {
  for (const auto& e : entries_)
    if (e.first == name) return e.second;
  return std::nullopt;
}

namespace {

[[noreturn]] void fail(TypeErrorKind kind, const Term& at, const std::string& msg) {
  std::string s = at.str();
  throw TypeError(kind, s, msg + " in `" + s + "`");
}

void expect(const Type& got, const Type& want, const Term& at, const char* what) {
  if (got != want)
    fail(TypeErrorKind::ArgumentMismatch, at,
         std::string(what) + ": expected " + want.str() + ", got " + got.str());
}

Type expect_seq(const Type& got, const Term& at, const char* what) {
  if (!got.is_seq()) fail(TypeErrorKind::ArgumentMismatch, at, std::string(what) + ": expected a sequence, got " + got.str());
  return got.element();
}

// Binder stack kept as a vector to avoid copying the context at each lambda.
class Inference {
 public:
  explicit Inference(const TypingContext& ctx) : ctx_(ctx) {}

  Type infer(const Term& t) {
    switch (t.kind()) {
      case TermKind::Var: {
        for (auto it = local_.rbegin(); it != local_.rend(); ++it)
          if (it->first == t.name()) return it->second;
        if (auto ty = ctx_.lookup(t.name())) return *ty;
        fail(TypeErrorKind::UnboundVariable, t, "unbound variable " + t.name());
      }
      case TermKind::Zero: return Type::nat();
      case TermKind::Succ: {
        const Term* cur = &t;
        while (cur->kind() == TermKind::Succ) cur = &cur->child(0);
        expect(infer(*cur), Type::nat(), t, "successor argument");
        return Type::nat();
      }
      case TermKind::NatRec: {
        Type rho = infer(t.child(0));
        expect(infer(t.child(1)), Type::arrow(Type::nat(), Type::arrow(rho, rho)), t, "rec step");
        expect(infer(t.child(2)), Type::nat(), t, "rec scrutinee");
        return rho;
      }
      case TermKind::Lam: {
        local_.emplace_back(t.name(), t.type());
        Type body = infer(t.child(0));
        local_.pop_back();
        return Type::arrow(t.type(), body);
      }
      case TermKind::App: {
        Type f = infer(t.child(0));
        if (!f.is_arrow()) fail(TypeErrorKind::NonFunctionApplication, t, "applying a term of type " + f.str());
        expect(infer(t.child(1)), f.domain(), t, "argument");
        return f.codomain();
      }
      case TermKind::EmptySeq: return Type::seq(t.type());
      case TermKind::Snoc: {
        Type el = expect_seq(infer(t.child(0)), t, "snoc");
        expect(infer(t.child(1)), el, t, "snoc element");
        return Type::seq(el);
      }
      case TermKind::SeqRec: {
        Type rho = infer(t.child(0));
        Type s = infer(t.child(2));
        Type el = expect_seq(s, t, "lrec scrutinee");
        expect(infer(t.child(1)), Type::arrow(s, Type::arrow(el, Type::arrow(rho, rho))), t, "lrec step");
        return rho;
      }
      case TermKind::BarRec: {
        const Type& el = t.type();
        Type s = Type::seq(el);
        expect(infer(t.child(0)), Type::arrow(Type::arrow(Type::nat(), el), Type::nat()), t, "br Y");
        Type g = infer(t.child(1));
        if (!g.is_arrow() || g.domain() != s)
          fail(TypeErrorKind::ArgumentMismatch, t, "br G: expected " + s.str() + " -> rho, got " + g.str());
        Type rho = g.codomain();
        expect(infer(t.child(2)), Type::arrow(s, Type::arrow(Type::arrow(el, rho), rho)), t, "br H");
        expect(infer(t.child(3)), s, t, "br sequence");
        return rho;
      }
      case TermKind::Len:
        expect_seq(infer(t.child(0)), t, "len");
        return Type::nat();
      case TermKind::Get: {
        Type el = expect_seq(infer(t.child(0)), t, "get");
        expect(infer(t.child(1)), Type::nat(), t, "get index");
        expect(infer(t.child(2)), el, t, "get default");
        return el;
      }
      case TermKind::Concat: {
        Type a = infer(t.child(0));
        expect_seq(a, t, "cat");
        expect(infer(t.child(1)), a, t, "cat right operand");
        return a;
      }
      case TermKind::Star: {
        Type yt = infer(t.child(0));
        Type cur = expect_seq(yt, t, "bounded application");
        for (std::size_t i = 1; i < t.arity(); ++i) {
          if (!cur.is_arrow())
            fail(TypeErrorKind::NonFunctionApplication, t, "bounded application of a sequence of " + cur.str());
          expect(infer(t.child(i)), cur.domain(), t, "bounded application argument");
          cur = cur.codomain();
        }
        if (!cur.is_seq())
          fail(TypeErrorKind::ArgumentMismatch, t, "bounded application must yield sequences, got " + cur.str());
        return cur;
      }
    }
    fail(TypeErrorKind::ArgumentMismatch, t, "unknown term");
  }

 private:
  const TypingContext& ctx_;
  std::vector<std::pair<std::string, Type>> local_;
};

}  // namespace

Type infer_type(const TypingContext& ctx, const Term& t) { return Inference(ctx).infer(t); }

Type star_result_type(const Type& yt, std::size_t nargs) {
  if (!yt.is_seq()) throw TypeError(TypeErrorKind::ArgumentMismatch, yt.str(), "bounded application needs a sequence");
  Type cur = yt.element();
  for (std::size_t i = 0; i < nargs; ++i) {
    if (!cur.is_arrow())
      throw TypeError(TypeErrorKind::NonFunctionApplication, yt.str(), "too many bounded-application arguments");
    cur = cur.codomain();
  }
  if (!cur.is_seq())
    throw TypeError(TypeErrorKind::ArgumentMismatch, yt.str(), "bounded application must yield sequences");
  return cur;
}

}  // namespace nsd
