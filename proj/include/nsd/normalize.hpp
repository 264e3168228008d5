#pragma once

#include <cstdint>

#include "nsd/term.hpp"

namespace nsd {

inline constexpr std::uint64_t kDefaultFuel = 1'000'000;

// Leftmost-outermost reduction with a step budget. Every contraction (beta,
// recursor unfolding, sequence primitive, bar recursion unfolding) costs one
// unit of fuel; exceeding the budget throws FuelExhausted.
//
// Reduction rules:
//   (\x.b) a                 -> b[a/x]
//   rec(g; h; 0)             -> g
//   rec(g; h; S n)           -> h n rec(g; h; n)
//   lrec(g; h; <>)           -> g
//   lrec(g; h; snoc(s, x))   -> h s x lrec(g; h; s)
//   len(<>) -> 0,  len(snoc(s, x)) -> S len(s)
//   cat(s, <>) -> s,  cat(s, snoc(t, x)) -> snoc(cat(s, t), x),  cat(<>, t) -> t
//   get(<s0..sk-1>, i, d)    -> s_i if i < k, else d   (i a numeral)
//   <>[a..]                  -> <>
//   snoc(Y, y)[a..]          -> cat(Y[a..], y a..)
//   br(Y; G; H; s)           -> G s                        if Y(s^) < |s|
//                            -> H s (\x. br(Y; G; H; snoc(s, x)))   otherwise
// where s^ = \i. get(s, i, 0) extends s by the zero of its element type.
class Normalizer {
 public:
  explicit Normalizer(std::uint64_t fuel = kDefaultFuel) : fuel_(fuel) {}

  Term whnf(const Term& t);
  Term normal_form(const Term& t);
  // Full evaluation of a Nat term to a numeral, if it has one.
  std::optional<std::uint64_t> numeral_value(const Term& t);
  // Components of a sequence term whose spine reduces to constructors.
  std::optional<std::vector<Term>> spine(const Term& t);

  std::uint64_t steps() const { return steps_; }

 private:
  void tick();
  std::uint64_t fuel_;
  std::uint64_t steps_ = 0;
};

Term normalize(const Term& t, std::uint64_t fuel = kDefaultFuel);

// Runs br(Y; G; H; s) to normal form; s must be a closed sequence.
Term spector_br(const Term& Y, const Term& G, const Term& H, const Term& s, std::uint64_t fuel = kDefaultFuel);

}  // namespace nsd
