#include "nsd/machine.hpp"

#include "nsd/error.hpp"

namespace nsd {

namespace {

Error runtime(const std::string& msg) { return Error("evaluation: " + msg); }

}  // namespace

void Machine::tick() {
  if (++steps_ > fuel_) throw FuelExhausted(fuel_);
}

Machine::Env Machine::bind(Env env, std::string name, ThunkPtr thunk) {
  return std::make_shared<const EnvNode>(EnvNode{std::move(name), std::move(thunk), std::move(env)});
}

Machine::ThunkPtr Machine::delay(const Term& t, Env env) {
  auto th = std::make_shared<Thunk>();
  th->term = t;
  th->env = std::move(env);
  return th;
}

Machine::ThunkPtr Machine::ready(ValuePtr v) {
  auto th = std::make_shared<Thunk>();
  th->value = std::move(v);
  return th;
}

Machine::ValuePtr Machine::nat(std::uint64_t n) {
  static const ValuePtr small[] = {
      std::make_shared<const Value>(Value{Kind::Nat, 0, {}, {}, {}, {}}),
      std::make_shared<const Value>(Value{Kind::Nat, 1, {}, {}, {}, {}}),
      std::make_shared<const Value>(Value{Kind::Nat, 2, {}, {}, {}, {}}),
      std::make_shared<const Value>(Value{Kind::Nat, 3, {}, {}, {}, {}}),
  };
  if (n < 4) return small[n];
  auto v = std::make_shared<Value>();
  v->nat = n;
  return v;
}

Machine::ValuePtr Machine::seq(std::vector<ThunkPtr> elems) {
  auto v = std::make_shared<Value>();
  v->kind = Kind::Seq;
  v->elems = std::move(elems);
  return v;
}

Machine::ValuePtr Machine::zero_value(const Type& t) {
  switch (t.kind()) {
    case TypeKind::Nat: return nat(0);
    case TypeKind::Seq: return seq({});
    case TypeKind::Arrow: {
      auto v = std::make_shared<Value>();
      v->kind = Kind::Native;
      Type cod = t.codomain();
      v->fn = [cod](Machine&, const ThunkPtr&) { return zero_value(cod); };
      return v;
    }
  }
  return nat(0);
}

Machine::ValuePtr Machine::force(const ThunkPtr& th) {
  if (th->value) return th->value;
  if (th->forcing) throw runtime("cyclic thunk");
  th->forcing = true;
  ValuePtr v = th->compute ? th->compute(*this) : eval(th->term, th->env);
  th->forcing = false;
  th->value = v;
  th->env.reset();
  th->compute = nullptr;
  return v;
}

std::uint64_t Machine::force_nat(const ThunkPtr& th) {
  ValuePtr v = force(th);
  if (v->kind != Kind::Nat) throw runtime("expected a number");
  return v->nat;
}

std::uint64_t Machine::eval_nat(const Term& t, const Env& env) {
  ValuePtr v = eval(t, env);
  if (v->kind != Kind::Nat) throw runtime("expected a number from " + t.str());
  return v->nat;
}

std::vector<Machine::ThunkPtr> Machine::eval_seq(const Term& t, const Env& env) {
  ValuePtr v = eval(t, env);
  if (v->kind != Kind::Seq) throw runtime("expected a sequence from " + t.str());
  return v->elems;
}

Machine::ValuePtr Machine::apply(const ValuePtr& fn, const ThunkPtr& arg) {
  tick();
  if (fn->kind == Kind::Closure) return eval(fn->lam.child(0), bind(fn->env, fn->lam.name(), arg));
  if (fn->kind == Kind::Native) return fn->fn(*this, arg);
  throw runtime("applying a non-function");
}

Machine::ValuePtr Machine::bar_rec(const ThunkPtr& Y, const ThunkPtr& G, const ThunkPtr& H,
                                   std::vector<ThunkPtr> elems, const Type& el) {
  auto extended = std::make_shared<Value>();
  extended->kind = Kind::Native;
  extended->fn = [elems, el](Machine& m, const ThunkPtr& i) {
    std::uint64_t k = m.force_nat(i);
    return k < elems.size() ? m.force(elems[k]) : zero_value(el);
  };
  std::uint64_t bound = [&] {
    ValuePtr v = apply(force(Y), ready(extended));
    if (v->kind != Kind::Nat) throw runtime("bar recursion functional must return a number");
    return v->nat;
  }();
  tick();
  ThunkPtr s = ready(seq(elems));
  if (bound < elems.size()) return apply(force(G), s);
  auto next = std::make_shared<Value>();
  next->kind = Kind::Native;
  next->fn = [Y, G, H, elems, el](Machine& m, const ThunkPtr& x) {
    auto longer = elems;
    longer.push_back(x);
    return m.bar_rec(Y, G, H, std::move(longer), el);
  };
  return apply(apply(force(H), s), ready(next));
}

Machine::ValuePtr Machine::eval(const Term& t, const Env& env) {
  switch (t.kind()) {
    case TermKind::Var: {
      for (const EnvNode* e = env.get(); e; e = e->next.get())
        if (e->name == t.name()) return force(e->thunk);
      throw runtime("unbound variable " + t.name());
    }
    case TermKind::Zero: return nat(0);
    case TermKind::Succ: {
      std::uint64_t n = 0;
      const Term* cur = &t;
      while (cur->kind() == TermKind::Succ) {
        ++n;
        cur = &cur->child(0);
      }
      return nat(eval_nat(*cur, env) + n);
    }
    case TermKind::Lam: {
      auto v = std::make_shared<Value>();
      v->kind = Kind::Closure;
      v->lam = t;
      v->env = env;
      return v;
    }
    case TermKind::App: {
      ValuePtr f = eval(t.child(0), env);
      return apply(f, delay(t.child(1), env));
    }
    case TermKind::NatRec: {
      std::uint64_t n = eval_nat(t.child(2), env);
      ThunkPtr acc = delay(t.child(0), env);
      ThunkPtr step = delay(t.child(1), env);
      for (std::uint64_t j = 0; j < n; ++j) {
        auto th = std::make_shared<Thunk>();
        th->compute = [step, j, prev = acc](Machine& m) {
          m.tick();
          return m.apply(m.apply(m.force(step), ready(nat(j))), prev);
        };
        acc = th;
      }
      if (n == 0) tick();
      return force(acc);
    }
    case TermKind::EmptySeq: return seq({});
    case TermKind::Snoc: {
      auto elems = eval_seq(t.child(0), env);
      elems.push_back(delay(t.child(1), env));
      return seq(std::move(elems));
    }
    case TermKind::SeqRec: {
      auto elems = eval_seq(t.child(2), env);
      ThunkPtr acc = delay(t.child(0), env);
      ThunkPtr step = delay(t.child(1), env);
      for (std::size_t j = 0; j < elems.size(); ++j) {
        auto prefix = ready(seq(std::vector<ThunkPtr>(elems.begin(), elems.begin() + j)));
        auto th = std::make_shared<Thunk>();
        th->compute = [step, prefix, x = elems[j], prev = acc](Machine& m) {
          m.tick();
          return m.apply(m.apply(m.apply(m.force(step), prefix), x), prev);
        };
        acc = th;
      }
      if (elems.empty()) tick();
      return force(acc);
    }
    case TermKind::BarRec:
      return bar_rec(delay(t.child(0), env), delay(t.child(1), env), delay(t.child(2), env),
                     eval_seq(t.child(3), env), t.type());
    case TermKind::Len: tick(); return nat(eval_seq(t.child(0), env).size());
    case TermKind::Get: {
      auto elems = eval_seq(t.child(0), env);
      std::uint64_t i = eval_nat(t.child(1), env);
      tick();
      return i < elems.size() ? force(elems[i]) : eval(t.child(2), env);
    }
    case TermKind::Concat: {
      auto a = eval_seq(t.child(0), env);
      auto b = eval_seq(t.child(1), env);
      tick();
      a.insert(a.end(), b.begin(), b.end());
      return seq(std::move(a));
    }
    case TermKind::Star: {
      auto ys = eval_seq(t.child(0), env);
      std::vector<ThunkPtr> args;
      for (std::size_t i = 1; i < t.arity(); ++i) args.push_back(delay(t.child(i), env));
      std::vector<ThunkPtr> out;
      for (const auto& y : ys) {
        tick();
        ValuePtr v = force(y);
        for (const auto& a : args) v = apply(v, a);
        if (v->kind != Kind::Seq) throw runtime("bounded application must yield sequences");
        out.insert(out.end(), v->elems.begin(), v->elems.end());
      }
      return seq(std::move(out));
    }
  }
  throw runtime("unknown term");
}

}  // namespace nsd
