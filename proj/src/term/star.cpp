#include "nsd/star.hpp"

#include "nsd/error.hpp"

namespace nsd {

Term bounded_apply(const TypingContext& ctx, const Term& Y, std::span<const Term> args) {
  if (args.empty()) {
    infer_type(ctx, Y);
    return Y;
  }
  Term t = Term::star(Y, std::vector<Term>(args.begin(), args.end()));
  infer_type(ctx, t);
  return t;
}

Term bounded_apply(const TypingContext& ctx, const Term& Y, const Term& x) {
  return bounded_apply(ctx, Y, std::span<const Term>(&x, 1));
}

Term big_lambda(const TypingContext& ctx, const std::vector<std::pair<std::string, Type>>& vars, const Term& t) {
  TypingContext inner = ctx;
  for (const auto& [x, ty] : vars) inner.declare(x, ty);
  Type result = infer_type(inner, t);
  Term body = t;
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
    body = Term::lam(it->first, it->second, body);
    result = Type::arrow(it->second, result);
  }
  return Term::singleton(result, body);
}

Term big_lambda(const TypingContext& ctx, const std::string& x, const Type& xt, const Term& t) {
  return big_lambda(ctx, {{x, xt}}, t);
}

Term expand_bounded_apply(const TypingContext& ctx, const Term& Y, std::span<const Term> args) {
  Type yt = infer_type(ctx, Y);
  Type out = star_result_type(yt, args.size());  // out = T*
  std::vector<const NameList*> avoid{&Y.free_vars()};
  for (const auto& a : args) avoid.push_back(&a.free_vars());
  std::string p = fresh_name("p", avoid);
  std::string y = fresh_name("y", avoid, std::span<const std::string>(&p, 1));
  std::vector<std::string> taken{p, y};
  std::string r = fresh_name("r", avoid, taken);
  Term step = Term::lam(
      p, yt,
      Term::lam(y, yt.element(),
                Term::lam(r, out, Term::concat(Term::var(r), Term::app(Term::var(y), args)))));
  return Term::seq_rec(Term::empty_seq(out.element()), step, Y);
}

}  // namespace nsd
