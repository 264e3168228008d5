#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nsd/dialectica.hpp"
#include "nsd/formula.hpp"
#include "nsd/normalize.hpp"

namespace nsd {

inline constexpr std::uint64_t kDefaultCap = 8;

// Finite test bindings. Unbounded quantifiers over N range over 0..cap; a
// variable (universal or quantified) with a generator set ranges over it.
struct Instance {
  std::map<std::string, std::vector<Term>, std::less<>> generators;
  Signature sig = Signature::standard();
  std::uint64_t cap = kDefaultCap;
  std::uint64_t fuel = kDefaultFuel;
};

using Bindings = std::vector<std::pair<std::string, Term>>;

enum class Truth { False, True, Unknown };

struct EvalResult {
  Truth value = Truth::Unknown;
  // Some quantifier on which the value depends was cut off at the cap or at
  // its generator set.
  bool capped = false;
  std::string reason;
  std::uint64_t steps = 0;
};

// Classical evaluation of an internal formula. Bounded quantifiers and
// quantifiers of the form  forall i:N. lt(i, t) -> B  (exists: lt(i, t) & B)
// enumerate exactly; other quantifiers use generator sets or the cap, and a
// higher-type quantifier with neither yields Unknown. Throws FuelExhausted,
// ShapeError on external input, InstanceError on unknown predicates.
EvalResult eval_internal(const Formula& f, const Bindings& env, const Instance& inst);

enum class Verdict { Pass, Fail, BoundedPass, Unknown };
std::string_view verdict_name(Verdict v);

struct Report {
  Verdict verdict = Verdict::Unknown;
  Bindings counterexample;
  std::uint64_t combinations = 0;
  std::uint64_t steps = 0;
  std::uint64_t cap = kDefaultCap;
  std::uint64_t fuel = kDefaultFuel;
  std::string reason;

  std::string str() const;
  std::string json() const;
};

// Evaluates matrix[evars := r] over the product of the uvars' generator sets,
// in lexicographic order (first uvar slowest). Fail carries the first
// falsifying assignment.
Report check_realizer(const NormalForm& nf, const RealizerBundle& r, const Instance& inst,
                      const TypingContext& ctx = {});

// Instance file, one directive per line, `#` comments:
//   fuel 100000
//   cap 5
//   gen s : N* = <>, <0>, <0, 1>
//   table R 2 3  0 1 0  1 0 0      (rows cols entries; declares R(N, N))
//   table R @R.tbl                 (entries read through `load`)
using FileLoader = std::function<std::string(const std::string&)>;
Instance parse_instance(std::string_view text, const FileLoader& load = {});

}  // namespace nsd
