#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "nsd/normalize.hpp"
#include "nsd/term.hpp"

namespace nsd {

// Call-by-need environment machine for closed terms. It computes the same
// observable results as Normalizer on Nat and sequence-spine values, without
// building intermediate terms, and is what the checker evaluates with.
class Machine {
 public:
  struct Value;
  struct Thunk;
  struct EnvNode;
  using ValuePtr = std::shared_ptr<const Value>;
  using ThunkPtr = std::shared_ptr<Thunk>;
  using Env = std::shared_ptr<const EnvNode>;
  using NativeFn = std::function<ValuePtr(Machine&, const ThunkPtr&)>;

  enum class Kind { Nat, Seq, Closure, Native };

  struct Value {
    Kind kind = Kind::Nat;
    std::uint64_t nat = 0;
    std::vector<ThunkPtr> elems;
    Term lam;
    Env env;
    NativeFn fn;
  };

  struct Thunk {
    Term term;
    Env env;
    std::function<ValuePtr(Machine&)> compute;
    ValuePtr value;
    bool forcing = false;
  };

  struct EnvNode {
    std::string name;
    ThunkPtr thunk;
    Env next;
  };

  explicit Machine(std::uint64_t fuel = kDefaultFuel) : fuel_(fuel) {}

  static Env bind(Env env, std::string name, ThunkPtr thunk);
  static ThunkPtr delay(const Term& t, Env env);
  static ThunkPtr ready(ValuePtr v);
  static ValuePtr nat(std::uint64_t n);
  static ValuePtr seq(std::vector<ThunkPtr> elems);
  static ValuePtr zero_value(const Type& t);

  ValuePtr force(const ThunkPtr& th);
  ValuePtr eval(const Term& t, const Env& env);
  ValuePtr apply(const ValuePtr& fn, const ThunkPtr& arg);

  std::uint64_t eval_nat(const Term& t, const Env& env = nullptr);
  std::vector<ThunkPtr> eval_seq(const Term& t, const Env& env = nullptr);
  std::uint64_t force_nat(const ThunkPtr& th);

  std::uint64_t steps() const { return steps_; }
  std::uint64_t fuel() const { return fuel_; }

 private:
  void tick();
  ValuePtr bar_rec(const ThunkPtr& Y, const ThunkPtr& G, const ThunkPtr& H, std::vector<ThunkPtr> elems,
                   const Type& el);

  std::uint64_t fuel_;
  std::uint64_t steps_ = 0;
};

}  // namespace nsd
