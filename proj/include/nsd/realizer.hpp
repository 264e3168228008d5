#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nsd/dialectica.hpp"
#include "nsd/formula.hpp"
#include "nsd/normalize.hpp"
#include "nsd/table.hpp"

namespace nsd {

// Search for an x with psi(a, x), given a closed component a. Returns a
// closed term of type `type`, or nothing when no witness is found within
// `bound`.
struct WitnessFinder {
  Type type = Type::nat();
  std::uint64_t bound = 0;
  std::function<std::optional<Term>(const Term& component)> find;

  // Least numeral x <= bound with psi(n, x), for numeral components n.
  static WitnessFinder least(std::uint64_t bound, std::function<bool(std::uint64_t n, std::uint64_t x)> psi);
  // Least witness in a table row.
  static WitnessFinder from_table(const FiniteRelationTable& r);
};

// The finite-choice construction, one entry at a time. Components are of
// type N or N*, where equality is decidable by a T-term. Starts from the
// constant zero function; a component equal to an earlier one leaves f
// unchanged, a new one a point update  f(m) = (m = a ? x : f0(m)).
class FacBuilder {
 public:
  struct Step {
    Term entry;
    bool duplicate = false;
    std::optional<Term> witness;
  };

  FacBuilder(Type component, WitnessFinder finder, std::uint64_t fuel = kDefaultFuel);

  // Throws WitnessNotFound when the finder fails on a new component.
  const Step& push(const Term& entry);
  const Term& f() const { return f_; }
  const std::vector<Step>& steps() const { return steps_; }

 private:
  Type component_;
  WitnessFinder finder_;
  std::uint64_t fuel_;
  std::vector<Term> seen_;
  std::vector<Step> steps_;
  Term f_;
};

struct FacResult {
  Term f;
  std::vector<FacBuilder::Step> steps;
};

// f : component -> finder.type with psi(a, f(a)) for every component a of s.
FacResult fac_choice_traced(const Term& s, const WitnessFinder& finder, std::uint64_t fuel = kDefaultFuel);
Term fac_choice(const Term& s, const WitnessFinder& finder, std::uint64_t fuel = kDefaultFuel);

// Decides a = b from finite choice on <a, b> with psi(x, n) := x = <a, b>_n:
// true iff f(a) = f(b). Supported at N and N*; other types throw
// UnsupportedType.
bool eq_decider_from_fac(const Term& a, const Term& b, std::uint64_t fuel = kDefaultFuel);

// Realizers for the countable saturation instance built from `inner`, the
// translation of Phi(n, x):
//   U~_i := Lambda U. Lambda m. U_i[m]
//   N    := Lambda U, s, w~. s
//   W_j  := Lambda U, s, w~. {w~_j}
// in the order of the existential variables of the translated instance.
// Throws ShapeError when inner has a free variable other than its own,
// `n`, `x` and those in `params`.
RealizerBundle csat_realizers(const NormalForm& inner, const std::string& n = "n", const std::string& x = "x",
                              const std::vector<std::string>& params = {});

// From  forall n in s. exists x. forall u in t. exists v in V n u. phi(u, v, n, x)
// to f with  forall n in s. forall u in t. exists v in V n u. phi(u, v, n, f n).
// All four variables are numerals; V : N -> N -> N*.
struct Ac0Instance {
  Term V;
  Term s;
  Term t;
  Formula phi;  // free variables among u, v, n, x
  Signature sig = Signature::standard();
  std::uint64_t bound = 8;
  std::uint64_t fuel = kDefaultFuel;
};
// forall u in t. exists v in V n u. phi, with n and x free.
Formula ac0_matrix(const Ac0Instance& inst);
Term csat_witness_from_ac0(const Ac0Instance& inst);

// \n. get(<g 0, ..., g k>, n, 0): agrees with g on n <= k.
Term standardize_choice(const Term& g, std::uint64_t k, std::uint64_t fuel = kDefaultFuel);

// Least-witness function for rows 0..k of r, computed by bar recursion:
//   Y a = least i <= k with not r(i, a i), else k
//   G s = s,  H s p = p (least witness in row |s|)
// and f = \n. get(br(Y; G; H; <>), n, 0). Throws NoWitnessInRow.
struct BarRecDemo {
  Term Y, G, H;
  Term prefix;  // normal form of br(Y; G; H; <>)
  Term f;
};
BarRecDemo br_countable_choice(const FiniteRelationTable& r, std::uint64_t k, std::uint64_t fuel = kDefaultFuel);
Term br_countable_choice_demo(const FiniteRelationTable& r, std::uint64_t k, std::uint64_t fuel = kDefaultFuel);

// <n <= k with f(n) = 0>, in increasing order.
Term char_sequence(const Term& f, std::uint64_t k, std::uint64_t fuel = kDefaultFuel);

// The table as a term N -> N -> N, 0 where r holds.
Term table_term(const FiniteRelationTable& r);

}  // namespace nsd
