#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "nsd/formula.hpp"
#include "nsd/term.hpp"

namespace gen {

using Rng = std::mt19937_64;

// Uniform integer in [lo, hi].
int pick(Rng& rng, int lo, int hi);
bool coin(Rng& rng, double p = 0.5);

// A random type of order at most `max_order` from a small fixed pool.
nsd::Type type(Rng& rng, int max_order);

// Type-directed generator of well-typed terms. Binder names are drawn from a
// small pool, so shadowing and capture situations occur regularly.
class TermGen {
 public:
  TermGen(Rng& rng, std::vector<std::pair<std::string, nsd::Type>> scope = {}) : rng_(rng), scope_(std::move(scope)) {}

  nsd::Term term(const nsd::Type& t, int depth);
  nsd::Term leaf(const nsd::Type& t);

 private:
  std::vector<std::string> vars_of(const nsd::Type& t) const;
  nsd::Term lam(const nsd::Type& dom, const nsd::Type& cod, int depth);
  nsd::Term bind(const std::string& x, const nsd::Type& t, const nsd::Type& body_type, int depth);

  Rng& rng_;
  std::vector<std::pair<std::string, nsd::Type>> scope_;
};

struct FormulaOptions {
  bool external = false;   // allow st, forallst, existsst
  int max_order = 2;       // of quantified and st-argument types
  bool nat_only = false;   // quantifiers and atoms over N only
  int term_depth = 2;
};

// Generator of well-formed formulas over the standard signature.
class FormulaGen {
 public:
  FormulaGen(Rng& rng, FormulaOptions opts, std::vector<std::pair<std::string, nsd::Type>> scope = {})
      : rng_(rng), opts_(opts), scope_(std::move(scope)) {}

  nsd::Formula formula(int depth);
  nsd::Formula atom();

 private:
  nsd::Term term(const nsd::Type& t);
  nsd::Type qtype();

  Rng& rng_;
  FormulaOptions opts_;
  std::vector<std::pair<std::string, nsd::Type>> scope_;
};

}  // namespace gen
