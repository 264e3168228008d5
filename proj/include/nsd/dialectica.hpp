#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nsd/formula.hpp"
#include "nsd/normalize.hpp"

namespace nsd {

using VarList = std::vector<std::pair<std::string, Type>>;

// existsst evars. forallst uvars. matrix
struct NormalForm {
  VarList evars;
  VarList uvars;
  Formula matrix;

  // EXISTS-ST [x1:T1, ...] FORALL-ST [y1:S1, ...] MATRIX <formula>
  std::string str() const;
  // The same as a formula, quantifier blocks over empty tuples dropped.
  Formula formula() const;
};

// Closed terms, one per evar.
using RealizerBundle = std::vector<Term>;

// The translation. `ctx` types the free variables of f. Bound variables of f
// that would clash as universal variables are renamed first; generated names
// use the prefixes x, y, U, Y, X with one counter per call.
NormalForm dst(const Formula& f, const TypingContext& ctx = {});

// matrix[evars := r], after checking r against the evars.
Formula instantiate(const NormalForm& nf, const RealizerBundle& r, const TypingContext& ctx = {});

// forall uvars. matrix[evars := r]. Throws ArityMismatch or TypeError when
// r does not match the evars.
Formula verification_condition(const NormalForm& nf, const RealizerBundle& r, const TypingContext& ctx = {});

// Normalizes every embedded term and unfolds bounded quantifiers over
// sequence literals (forall y in <t1, ..., tk>. B  becomes  B[t1] & ... & B[tk]).
Formula simplify(const Formula& f, std::uint64_t fuel = kDefaultFuel);

// Recognizes
//   (forall n in s. exists x. psi(n, x)) -> exists f. forall n in s. psi(n, f n)
// up to renaming of bound variables.
struct FacMatch {
  Term seq;
  std::string n;
  std::string x;
  Type type;  // of x
  Formula psi;
};
std::optional<FacMatch> match_fac(const Formula& f);

}  // namespace nsd
