#include "nsd/checker.hpp"

#include <json.hpp>
#include <sstream>

#include "nsd/error.hpp"
#include "nsd/machine.hpp"

namespace nsd {

namespace {

using Env = Machine::Env;
using ThunkPtr = Machine::ThunkPtr;

EvalResult truth(bool b, bool capped = false) { return {b ? Truth::True : Truth::False, capped, {}, 0}; }

EvalResult unknown(std::string reason) { return {Truth::Unknown, false, std::move(reason), 0}; }

// lt(i, t) with i not free in t.
std::optional<Term> guard_bound(const Formula& g, const std::string& i) {
  if (g.kind() != FormulaKind::Pred || g.name() != "lt" || g.arity() != 0 || g.terms().size() != 2) return std::nullopt;
  const Term& lhs = g.term(0);
  if (lhs.kind() != TermKind::Var || lhs.name() != i || g.term(1).has_free(i)) return std::nullopt;
  return g.term(1);
}

class Evaluator {
 public:
  explicit Evaluator(const Instance& inst) : inst_(inst), m_(inst.fuel) {}

  EvalResult eval(const Formula& f, const Env& env) {
    switch (f.kind()) {
      case FormulaKind::Eq: return truth(m_.eval_nat(f.term(0), env) == m_.eval_nat(f.term(1), env));
      case FormulaKind::Pred: return predicate(f, env);
      case FormulaKind::False: return truth(false);
      case FormulaKind::And: {
        EvalResult a = eval(f.child(0), env);
        if (a.value == Truth::False) return a;
        EvalResult b = eval(f.child(1), env);
        if (b.value == Truth::False) return b;
        if (a.value == Truth::Unknown) return a;
        if (b.value == Truth::Unknown) return b;
        return truth(true, a.capped || b.capped);
      }
      case FormulaKind::Or: {
        EvalResult a = eval(f.child(0), env);
        if (a.value == Truth::True) return a;
        EvalResult b = eval(f.child(1), env);
        if (b.value == Truth::True) return b;
        if (a.value == Truth::Unknown) return a;
        if (b.value == Truth::Unknown) return b;
        return truth(false, a.capped || b.capped);
      }
      case FormulaKind::Imp: {
        EvalResult a = eval(f.child(0), env);
        if (a.value == Truth::False) return truth(true, a.capped);
        EvalResult b = eval(f.child(1), env);
        if (b.value == Truth::True) return b;
        if (a.value == Truth::Unknown) return a;
        if (b.value == Truth::Unknown) return b;
        return truth(false, a.capped || b.capped);
      }
      case FormulaKind::Forall:
      case FormulaKind::Exists: return quantifier(f, env);
      default: break;
    }
    throw ShapeError("checker evaluates internal formulas only: " + f.str());
  }

  std::uint64_t steps() const { return m_.steps(); }

 private:
  EvalResult predicate(const Formula& f, const Env& env) {
    const PredicateDecl* d = inst_.sig.find(f.name());
    if (!d) throw InstanceError("no interpretation for predicate " + f.name());
    if (d->args.size() != f.terms().size())
      throw ArityMismatch("predicate " + f.name() + " takes " + std::to_string(d->args.size()) + " arguments");
    std::vector<std::uint64_t> args;
    for (std::size_t i = 0; i < d->args.size(); ++i) {
      if (!d->args[i].is_nat()) throw InstanceError("predicate " + f.name() + " has a non-numeral argument");
      args.push_back(m_.eval_nat(f.term(i), env));
    }
    return truth(d->interp(args));
  }

  // Runs body over the candidates; `universal` selects forall/exists.
  // `exhaustive` says whether the candidates cover the whole range.
  template <class Next>
  EvalResult range(bool universal, bool exhaustive, const std::string& x, const Formula& body, const Env& env,
                   Next next) {
    bool capped = !exhaustive;
    std::optional<EvalResult> unk;
    ThunkPtr th;
    while ((th = next())) {
      EvalResult r = eval(body, Machine::bind(env, x, th));
      if (r.value == Truth::Unknown) {
        if (!unk) unk = r;
        continue;
      }
      if ((r.value == Truth::True) != universal) return r;
      capped = capped || r.capped;
    }
    if (unk) return *unk;
    return truth(universal, capped);
  }

  EvalResult quantifier(const Formula& f, const Env& env) {
    const bool universal = f.kind() == FormulaKind::Forall;
    const std::string& x = f.name();
    const Type& t = f.type();
    const Formula& body = f.child(0);

    if (auto b = universal ? match_forall_in(f) : match_exists_in(f)) {
      std::vector<ThunkPtr> elems = m_.eval_seq(b->seq, env);
      std::size_t k = 0;
      return range(universal, true, b->var, b->body, env,
                   [&]() -> ThunkPtr { return k < elems.size() ? elems[k++] : nullptr; });
    }
    if (t.is_nat() && body.kind() == (universal ? FormulaKind::Imp : FormulaKind::And)) {
      if (auto bound = guard_bound(body.child(0), x)) {
        std::uint64_t n = m_.eval_nat(*bound, env);
        std::uint64_t k = 0;
        return range(universal, true, x, body.child(1), env,
                     [&]() -> ThunkPtr { return k < n ? Machine::ready(Machine::nat(k++)) : nullptr; });
      }
    }
    auto gen = inst_.generators.find(x);
    if (gen != inst_.generators.end()) {
      std::size_t k = 0;
      const auto& terms = gen->second;
      return range(universal, false, x, body, env,
                   [&]() -> ThunkPtr { return k < terms.size() ? Machine::delay(terms[k++], nullptr) : nullptr; });
    }
    if (t.is_nat()) {
      std::uint64_t k = 0;
      return range(universal, false, x, body, env,
                   [&]() -> ThunkPtr { return k <= inst_.cap ? Machine::ready(Machine::nat(k++)) : nullptr; });
    }
    return unknown("UnboundedHigherTypeQuantifier: " + x + ":" + t.str());
  }

  const Instance& inst_;
  Machine m_;
};

Env bind_all(const Bindings& env) {
  Env e;
  for (const auto& [x, t] : env) e = Machine::bind(e, x, Machine::delay(t, nullptr));
  return e;
}

}  // namespace

EvalResult eval_internal(const Formula& f, const Bindings& env, const Instance& inst) {
  for (const auto& [x, t] : env)
    if (!t.free_vars().empty()) throw InstanceError("binding for " + x + " is not closed: " + t.str());
  for (const auto& x : f.free_vars()) {
    bool bound = false;
    for (const auto& [y, t] : env) bound = bound || y == x;
    if (!bound) throw InstanceError("free variable " + x + " has no binding");
  }
  Evaluator ev(inst);
  EvalResult r = ev.eval(f, bind_all(env));
  r.steps = ev.steps();
  return r;
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "Pass";
    case Verdict::Fail: return "Fail";
    case Verdict::BoundedPass: return "BoundedPass";
    case Verdict::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::string Report::str() const {
  std::ostringstream os;
  os << "verdict: " << verdict_name(verdict) << "\n";
  if (!reason.empty()) os << "reason: " << reason << "\n";
  if (verdict == Verdict::Fail) {
    os << "counterexample:";
    if (counterexample.empty()) os << " (empty)";
    os << "\n";
    for (const auto& [x, t] : counterexample) os << "  " << x << " = " << t << "\n";
  }
  os << "combinations: " << combinations << "\n";
  os << "steps: " << steps << "\n";
  os << "cap: " << cap << "\n";
  os << "fuel: " << fuel << "\n";
  return os.str();
}

std::string Report::json() const {
  nlohmann::ordered_json j;
  j["verdict"] = verdict_name(verdict);
  if (verdict == Verdict::Fail) {
    nlohmann::ordered_json ce = nlohmann::ordered_json::object();
    for (const auto& [x, t] : counterexample) ce[x] = t.str();
    j["counterexample"] = ce;
  } else {
    j["counterexample"] = nullptr;
  }
  j["combinations"] = combinations;
  j["steps"] = steps;
  j["cap"] = cap;
  j["fuel"] = fuel;
  if (!reason.empty()) j["reason"] = reason;
  return j.dump(2);
}

Report check_realizer(const NormalForm& nf, const RealizerBundle& r, const Instance& inst, const TypingContext& ctx) {
  Formula m = instantiate(nf, r, ctx);
  std::vector<const std::vector<Term>*> gens;
  for (const auto& [y, t] : nf.uvars) {
    auto it = inst.generators.find(y);
    if (it == inst.generators.end()) throw InstanceError("no generator set for universal variable " + y);
    for (const auto& g : it->second) {
      Type gt = infer_type({}, g);
      if (!(gt == t))
        throw InstanceError("generator " + g.str() + " for " + y + " has type " + gt.str() + ", expected " + t.str());
    }
    gens.push_back(&it->second);
  }

  Report rep;
  rep.cap = inst.cap;
  rep.fuel = inst.fuel;
  bool capped = false;
  std::optional<std::string> unknown_reason;
  std::vector<std::size_t> idx(gens.size(), 0);
  for (const auto* g : gens)
    if (g->empty()) {
      rep.verdict = Verdict::Pass;
      return rep;
    }
  for (;;) {
    Bindings env;
    for (std::size_t i = 0; i < gens.size(); ++i) env.emplace_back(nf.uvars[i].first, (*gens[i])[idx[i]]);
    Evaluator ev(inst);
    EvalResult res = ev.eval(m, bind_all(env));
    rep.steps += ev.steps();
    ++rep.combinations;
    if (res.value == Truth::False) {
      rep.verdict = Verdict::Fail;
      rep.counterexample = std::move(env);
      if (res.capped) rep.reason = "falsified under the quantifier cap";
      return rep;
    }
    if (res.value == Truth::Unknown && !unknown_reason) unknown_reason = res.reason;
    capped = capped || res.capped;
    std::size_t i = gens.size();
    while (i > 0 && ++idx[i - 1] == gens[i - 1]->size()) idx[--i] = 0;
    if (i == 0) break;
  }
  if (unknown_reason) {
    rep.verdict = Verdict::Unknown;
    rep.reason = *unknown_reason;
  } else {
    rep.verdict = capped ? Verdict::BoundedPass : Verdict::Pass;
  }
  return rep;
}

}  // namespace nsd
