#include "nsd/dialectica.hpp"

#include <set>
#include <sstream>

#include "nsd/error.hpp"

namespace nsd {

namespace {

Term var(const std::string& x) { return Term::var(x); }

// Y[args], with Y[] read as Y itself.
Term star_or_self(const std::string& Y, const std::vector<Term>& args) {
  return args.empty() ? var(Y) : Term::star(var(Y), args);
}

// Type of Y such that star_or_self(Y, args) has type `result`.
Type star_type(const std::vector<Type>& args, const Type& result) {
  return args.empty() ? result : Type::seq(arrows(args, result));
}

std::vector<Type> types_of(const VarList& vs) {
  std::vector<Type> out;
  for (const auto& [x, t] : vs) out.push_back(t);
  return out;
}

std::vector<Term> vars_of(const VarList& vs) {
  std::vector<Term> out;
  for (const auto& [x, t] : vs) out.push_back(var(x));
  return out;
}

VarList concat(VarList a, const VarList& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

class Translator {
 public:
  Translator(const Formula& f, const TypingContext& ctx) {
    for (const auto& [x, t] : ctx.entries()) used_.insert(x);
    for (const auto& x : f.free_vars()) used_.insert(x);
    std::vector<std::string> all;
    collect_names(f, all);
    taken_.insert(all.begin(), all.end());
    taken_.insert(used_.begin(), used_.end());
  }

  // Renames quantifier binders so that no two binders, and no binder and free
  // variable, share a name.
  Formula uniquify(const Formula& f) {
    if (f.is_quantifier()) {
      std::string x = f.name();
      Formula body = f.child(0);
      if (used_.count(x)) {
        std::string y = fresh(x);
        body = substitute(body, x, var(y));
        x = y;
      }
      used_.insert(x);
      taken_.insert(x);
      return Formula::quant(f.kind(), x, f.type(), uniquify(body));
    }
    std::vector<Formula> kids;
    for (std::size_t i = 0; i < f.arity(); ++i) kids.push_back(uniquify(f.child(i)));
    std::vector<Term> terms(f.terms().begin(), f.terms().end());
    return rebuild(f, std::move(terms), std::move(kids));
  }

  NormalForm go(const Formula& f, const TypingContext& ctx) {
    if (is_internal(f)) return {{}, {}, f};
    switch (f.kind()) {
      case FormulaKind::St: {
        Type s = infer_type(ctx, f.term(0));
        std::string x = next("x");
        return {{{x, Type::seq(s)}}, {}, mem_formula(s, f.term(0), var(x))};
      }
      case FormulaKind::And:
      case FormulaKind::Or: {
        NormalForm a = go(f.child(0), ctx);
        NormalForm b = go(f.child(1), ctx);
        Formula m = f.kind() == FormulaKind::And ? Formula::conj(a.matrix, b.matrix) : Formula::disj(a.matrix, b.matrix);
        return {concat(a.evars, b.evars), concat(a.uvars, b.uvars), m};
      }
      case FormulaKind::Imp: return implication(go(f.child(0), ctx), go(f.child(1), ctx));
      case FormulaKind::Forall:
      case FormulaKind::Exists:
      case FormulaKind::ForallSt:
      case FormulaKind::ExistsSt: {
        const std::string& z = f.name();
        const Type& t = f.type();
        NormalForm in = go(f.child(0), ctx.with(z, t));
        switch (f.kind()) {
          case FormulaKind::Forall: return {in.evars, in.uvars, Formula::forall(z, t, in.matrix)};
          case FormulaKind::Exists: {
            auto [uvars, body] = bound_block(in.uvars, in.matrix);
            return {in.evars, uvars, Formula::exists(z, t, body)};
          }
          case FormulaKind::ForallSt: {
            VarList evars;
            Substitution sub;
            for (const auto& [x, xt] : in.evars) {
              std::string X = next("X");
              evars.emplace_back(X, Type::seq(Type::arrow(t, xt)));
              sub.emplace(x, Term::star(var(X), {var(z)}));
            }
            return {evars, concat({{z, t}}, in.uvars), substitute(in.matrix, sub)};
          }
          default: {
            std::string Z = next("x");
            auto [uvars, body] = bound_block(in.uvars, in.matrix);
            return {concat(in.evars, {{Z, Type::seq(t)}}), uvars, exists_in(z, t, var(Z), body)};
          }
        }
      }
      default: break;
    }
    throw ShapeError("unexpected formula node in translation: " + f.str());
  }

 private:
  std::string fresh(const std::string& base) {
    for (int k = 1;; ++k) {
      std::string s = base + std::to_string(k);
      if (!taken_.count(s)) return s;
    }
  }

  std::string next(const std::string& prefix) {
    for (;;) {
      std::string s = prefix + std::to_string(++counter_);
      if (!taken_.count(s)) {
        taken_.insert(s);
        return s;
      }
    }
  }

  // forall y1' in y1. ... forall yk' in yk. body, over fresh sequence
  // variables yi of type Seq(type of yi').
  std::pair<VarList, Formula> bound_block(const VarList& ys, Formula body) {
    VarList seqs;
    for (const auto& [y, t] : ys) seqs.emplace_back(next("y"), Type::seq(t));
    for (std::size_t j = ys.size(); j-- > 0;) body = forall_in(ys[j].first, ys[j].second, var(seqs[j].first), body);
    return {seqs, body};
  }

  NormalForm implication(const NormalForm& a, const NormalForm& b) {
    const std::vector<Term> xs = vars_of(a.evars);
    const std::vector<Type> xts = types_of(a.evars);
    std::vector<Term> xv = xs;
    std::vector<Type> xvts = xts;
    for (const auto& [v, t] : b.uvars) {
      xv.push_back(var(v));
      xvts.push_back(t);
    }
    VarList evars;
    Substitution sub;
    for (const auto& [u, ut] : b.evars) {
      std::string U = next("U");
      evars.emplace_back(U, star_type(xts, ut));
      sub.emplace(u, star_or_self(U, xs));
    }
    Formula premise = a.matrix;
    std::vector<std::string> Ys;
    for (const auto& [y, yt] : a.uvars) {
      std::string Y = next("Y");
      evars.emplace_back(Y, star_type(xvts, Type::seq(yt)));
      Ys.push_back(Y);
    }
    for (std::size_t j = a.uvars.size(); j-- > 0;)
      premise = forall_in(a.uvars[j].first, a.uvars[j].second, star_or_self(Ys[j], xv), premise);
    return {evars, concat(a.evars, b.uvars), Formula::imp(premise, substitute(b.matrix, sub))};
  }

  std::set<std::string> used_;
  std::set<std::string> taken_;
  int counter_ = 0;
};

std::string list_str(const VarList& vs) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < vs.size(); ++i) os << (i ? ", " : "") << vs[i].first << ":" << vs[i].second;
  os << "]";
  return os.str();
}

}  // namespace

std::string NormalForm::str() const {
  return "EXISTS-ST " + list_str(evars) + " FORALL-ST " + list_str(uvars) + " MATRIX " + matrix.str();
}

Formula NormalForm::formula() const {
  Formula f = matrix;
  for (auto it = uvars.rbegin(); it != uvars.rend(); ++it) f = Formula::forall_st(it->first, it->second, f);
  for (auto it = evars.rbegin(); it != evars.rend(); ++it) f = Formula::exists_st(it->first, it->second, f);
  return f;
}

NormalForm dst(const Formula& f, const TypingContext& ctx) {
  if (is_internal(f)) return {{}, {}, f};
  Translator tr(f, ctx);
  Formula g = tr.uniquify(f);
  return tr.go(g, ctx);
}

Formula instantiate(const NormalForm& nf, const RealizerBundle& r, const TypingContext& ctx) {
  if (r.size() != nf.evars.size())
    throw ArityMismatch("bundle has " + std::to_string(r.size()) + " terms, normal form has " +
                        std::to_string(nf.evars.size()) + " existential variables");
  Substitution sub;
  for (std::size_t i = 0; i < r.size(); ++i) {
    Type t = infer_type(ctx, r[i]);
    if (!(t == nf.evars[i].second))
      throw TypeError(TypeErrorKind::ArgumentMismatch, r[i].str(),
                      "realizer for " + nf.evars[i].first + " has type " + t.str() + ", expected " +
                          nf.evars[i].second.str());
    sub.emplace(nf.evars[i].first, r[i]);
  }
  return substitute(nf.matrix, sub);
}

Formula verification_condition(const NormalForm& nf, const RealizerBundle& r, const TypingContext& ctx) {
  Formula f = instantiate(nf, r, ctx);
  for (auto it = nf.uvars.rbegin(); it != nf.uvars.rend(); ++it) f = Formula::forall(it->first, it->second, f);
  return f;
}

Formula simplify(const Formula& f, std::uint64_t fuel) {
  for (bool universal : {true, false}) {
    auto m = universal ? match_forall_in(f) : match_exists_in(f);
    if (!m) continue;
    Term s = normalize(m->seq, fuel);
    if (auto elems = as_seq_literal(s)) {
      std::vector<Formula> parts;
      for (const auto& e : *elems) parts.push_back(simplify(substitute(m->body, m->var, e), fuel));
      if (parts.empty()) return universal ? conj_all(parts) : Formula::falsum();
      Formula out = parts[0];
      for (std::size_t i = 1; i < parts.size(); ++i)
        out = universal ? Formula::conj(out, parts[i]) : Formula::disj(out, parts[i]);
      return out;
    }
    Formula body = simplify(m->body, fuel);
    return universal ? forall_in(m->var, m->type, s, body) : exists_in(m->var, m->type, s, body);
  }
  std::vector<Term> terms;
  for (const auto& t : f.terms()) terms.push_back(normalize(t, fuel));
  std::vector<Formula> kids;
  for (std::size_t i = 0; i < f.arity(); ++i) kids.push_back(simplify(f.child(i), fuel));
  return rebuild(f, std::move(terms), std::move(kids));
}

std::optional<FacMatch> match_fac(const Formula& f) {
  if (f.kind() != FormulaKind::Imp) return std::nullopt;
  auto pre = match_forall_in(f.child(0));
  if (!pre || !(pre->type == Type::nat()) || pre->body.kind() != FormulaKind::Exists) return std::nullopt;
  const std::string& x = pre->body.name();
  const Type& xt = pre->body.type();
  const Formula& psi = pre->body.child(0);
  const Formula& c = f.child(1);
  if (c.kind() != FormulaKind::Exists || !(c.type() == Type::arrow(Type::nat(), xt))) return std::nullopt;
  const std::string& g = c.name();
  if (psi.has_free(g) && g != x && g != pre->var) return std::nullopt;
  auto post = match_forall_in(c.child(0));
  if (!post || !(post->type == Type::nat()) || !alpha_equal(post->seq, pre->seq)) return std::nullopt;
  Substitution sub;
  sub.emplace(pre->var, var(post->var));
  sub.emplace(x, Term::app(var(g), var(post->var)));
  if (!alpha_equal(post->body, substitute(psi, sub))) return std::nullopt;
  return FacMatch{pre->seq, pre->var, x, xt, psi};
}

}  // namespace nsd
