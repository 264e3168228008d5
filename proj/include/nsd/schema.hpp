#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nsd/formula.hpp"

namespace nsd {

// Holes of an axiom schema. Which fields matter depends on the schema; the
// distinguished variables name the free variables of `phi` that the schema
// binds.
struct SchemaParams {
  std::optional<Formula> phi;
  std::string x = "x";
  std::string y = "y";
  std::string n = "n";
  Type sigma = Type::nat();
  Type tau = Type::nat();
  // Numerical parameters (transfer schema).
  std::vector<std::string> params;
  // Closed term (standardness of closed terms).
  std::optional<Term> term;
};

// Schemas:
//   eq-forall   forallst x. F <-> forall x. (st(x) -> F)
//   eq-exists   existsst x. F <-> exists x. (st(x) & F)
//   tst-eq      forall x, y:s. st(x) & x = y -> st(y)
//   tst-closed  st(t) for a closed term t
//   tst-app     forall f:s -> t. forall x:s. st(f) & st(x) -> st(f x)
//   ia-st       F(0) & forallst x:N. (F(x) -> F(S x)) -> forallst x:N. F(x)
//   ia          f(0) & forall x:N. (f(x) -> f(S x)) -> forall x:N. f(x)            (f internal)
//   os0         forallst x:N. f(x) -> exists x:N. (!st(x) & f(x))                 (f internal)
//   csat        forallst n:N. exists x:s. F(n, x) -> exists g:N -> s. forallst n:N. F(n, g n)
//   csat0       csat with s = N
//   i           forallst x':s*. exists y:t. forall x in x'. f(x, y) -> exists y:t. forallst x:s. f(x, y)
//   hac-int     forallst x:s. existsst y:t. f(x, y) -> existsst F:s -> t*. forallst x:s. exists y in F x. f(x, y)
//   ac0-st      forallst n:N. existsst x:s. F(n, x) -> existsst g:N -> s. forallst n:N. F(n, g n)
//   ac0-int     ac0-st with f internal
//   sat         forallst x:s. exists y:t. F(x, y) -> exists g:s -> t. forallst x:s. F(x, g x)
//   nptp        forallst t1..tk:N. (forallst x:N. f(x, t) -> forall x:N. f(x, t))  (free vars of f among x, t)
//   fac         forall s:N*. (forall n in s. exists x:t. f(n, x) -> exists g:N -> t. forall n in s. f(n, g n))
// Throws SchemaParamError on missing or non-internal parameters where the
// schema requires an internal one.
Formula axiom_instance(std::string_view schema, const SchemaParams& params);

const std::vector<std::string>& schema_names();

}  // namespace nsd
