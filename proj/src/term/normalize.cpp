#include "nsd/normalize.hpp"

#include <algorithm>

#include "nsd/error.hpp"
#include "nsd/typing.hpp"

namespace nsd {

void Normalizer::tick() {
  if (++steps_ > fuel_) throw FuelExhausted(fuel_);
}

std::optional<std::uint64_t> Normalizer::numeral_value(const Term& t) {
  std::uint64_t n = 0;
  Term cur = whnf(t);
  while (cur.kind() == TermKind::Succ) {
    ++n;
    cur = whnf(cur.child(0));
  }
  if (cur.kind() != TermKind::Zero) return std::nullopt;
  return n;
}

std::optional<std::vector<Term>> Normalizer::spine(const Term& t) {
  std::vector<Term> elems;
  Term cur = whnf(t);
  while (cur.kind() == TermKind::Snoc) {
    elems.push_back(cur.child(1));
    cur = whnf(cur.child(0));
  }
  if (cur.kind() != TermKind::EmptySeq) return std::nullopt;
  std::reverse(elems.begin(), elems.end());
  return elems;
}

Term Normalizer::whnf(const Term& input) {
  Term t = input;
  for (;;) {
    switch (t.kind()) {
      case TermKind::App: {
        Term f = whnf(t.child(0));
        if (f.kind() == TermKind::Lam) {
          tick();
          t = substitute(f.child(0), f.name(), t.child(1));
          continue;
        }
        return f.same(t.child(0)) ? t : Term::app(f, t.child(1));
      }
      case TermKind::NatRec: {
        Term n = whnf(t.child(2));
        if (n.kind() == TermKind::Zero) {
          tick();
          t = t.child(0);
          continue;
        }
        if (n.kind() == TermKind::Succ) {
          tick();
          const Term& m = n.child(0);
          t = Term::app(Term::app(t.child(1), m), Term::nat_rec(t.child(0), t.child(1), m));
          continue;
        }
        return Term::nat_rec(t.child(0), t.child(1), n);
      }
      case TermKind::SeqRec: {
        Term s = whnf(t.child(2));
        if (s.kind() == TermKind::EmptySeq) {
          tick();
          t = t.child(0);
          continue;
        }
        if (s.kind() == TermKind::Snoc) {
          tick();
          const Term& init = s.child(0);
          Term rest = Term::seq_rec(t.child(0), t.child(1), init);
          t = Term::app(Term::app(Term::app(t.child(1), init), s.child(1)), rest);
          continue;
        }
        return Term::seq_rec(t.child(0), t.child(1), s);
      }
      case TermKind::Len: {
        Term s = whnf(t.child(0));
        if (s.kind() == TermKind::EmptySeq) {
          tick();
          return Term::zero();
        }
        if (s.kind() == TermKind::Snoc) {
          tick();
          return Term::succ(Term::len(s.child(0)));
        }
        return Term::len(s);
      }
      case TermKind::Concat: {
        Term right = whnf(t.child(1));
        if (right.kind() == TermKind::EmptySeq) {
          tick();
          t = t.child(0);
          continue;
        }
        if (right.kind() == TermKind::Snoc) {
          tick();
          return Term::snoc(Term::concat(t.child(0), right.child(0)), right.child(1));
        }
        Term left = whnf(t.child(0));
        if (left.kind() == TermKind::EmptySeq) {
          tick();
          t = right;
          continue;
        }
        return Term::concat(left, right);
      }
      case TermKind::Get: {
        auto elems = spine(t.child(0));
        if (!elems) return t;
        auto idx = numeral_value(t.child(1));
        if (!idx) return t;
        tick();
        t = *idx < elems->size() ? (*elems)[*idx] : t.child(2);
        continue;
      }
      case TermKind::Star: {
        Term Y = whnf(t.child(0));
        std::vector<Term> args(t.children().begin() + 1, t.children().end());
        if (Y.kind() == TermKind::EmptySeq) {
          tick();
          return Term::empty_seq(star_result_type(Type::seq(Y.type()), args.size()).element());
        }
        if (Y.kind() == TermKind::Snoc) {
          tick();
          Term head = Term::app(Y.child(1), args);
          t = Term::concat(Term::star(Y.child(0), std::move(args)), head);
          continue;
        }
        return Term::star(Y, std::move(args));
      }
      case TermKind::BarRec: {
        auto elems = spine(t.child(3));
        if (!elems) return t;
        const Type& el = t.type();
        Term s = Term::seq_literal(el, *elems);
        std::string i = fresh_name("i", {&s.free_vars()});
        Term extended = Term::lam(i, Type::nat(), Term::get(s, Term::var(i), zero_term(el)));
        auto bound = numeral_value(Term::app(t.child(0), extended));
        if (!bound) return t;
        tick();
        if (*bound < elems->size()) {
          t = Term::app(t.child(1), s);
          continue;
        }
        std::string x = fresh_name("x", {&t.free_vars()});
        Term next = Term::bar_rec(t.child(0), t.child(1), t.child(2), Term::snoc(s, Term::var(x)), el);
        t = Term::app(Term::app(t.child(2), s), Term::lam(x, el, next));
        continue;
      }
      default: return t;
    }
  }
}

Term Normalizer::normal_form(const Term& t) {
  Term w = whnf(t);
  switch (w.kind()) {
    case TermKind::Var:
    case TermKind::Zero:
    case TermKind::EmptySeq: return w;
    case TermKind::Succ: {
      std::uint64_t n = 0;
      Term cur = w;
      while (cur.kind() == TermKind::Succ) {
        ++n;
        cur = whnf(cur.child(0));
      }
      Term out = normal_form(cur);
      for (std::uint64_t k = 0; k < n; ++k) out = Term::succ(out);
      return out;
    }
    case TermKind::Snoc: {
      std::vector<Term> elems;
      Term cur = w;
      while (cur.kind() == TermKind::Snoc) {
        elems.push_back(cur.child(1));
        cur = whnf(cur.child(0));
      }
      Term out = normal_form(cur);
      for (auto it = elems.rbegin(); it != elems.rend(); ++it) out = Term::snoc(out, normal_form(*it));
      return out;
    }
    default: {
      std::vector<Term> kids;
      kids.reserve(w.arity());
      for (const auto& k : w.children()) kids.push_back(normal_form(k));
      return rebuild(w, std::move(kids));
    }
  }
}

Term normalize(const Term& t, std::uint64_t fuel) { return Normalizer(fuel).normal_form(t); }

Term spector_br(const Term& Y, const Term& G, const Term& H, const Term& s, std::uint64_t fuel) {
  Type st = infer_type({}, s);
  if (!st.is_seq()) throw TypeError(TypeErrorKind::ArgumentMismatch, s.str(), "bar recursion needs a sequence");
  Term br = Term::bar_rec(Y, G, H, s, st.element());
  infer_type({}, br);
  return normalize(br, fuel);
}

}  // namespace nsd
