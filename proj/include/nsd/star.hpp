#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nsd/term.hpp"
#include "nsd/typing.hpp"

namespace nsd {

// Y[x1, ..., xk]: the concatenation of y x1 ... xk over the components y of Y.
// Y must have type (S1 -> ... -> Sk -> T*)*; with no arguments Y[] is Y.
// Throws TypeError when the element type of Y does not fit the arguments.
Term bounded_apply(const TypingContext& ctx, const Term& Y, std::span<const Term> args);
Term bounded_apply(const TypingContext& ctx, const Term& Y, const Term& x);

// Lambda x1 ... xk. t: the one-element sequence <\x1. ... \xk. t>.
Term big_lambda(const TypingContext& ctx, const std::vector<std::pair<std::string, Type>>& vars, const Term& t);
Term big_lambda(const TypingContext& ctx, const std::string& x, const Type& xt, const Term& t);

// The same value as Y[args] written with the list recursor only:
// lrec(<>; \p. \y. \r. cat(r, y args); Y).
Term expand_bounded_apply(const TypingContext& ctx, const Term& Y, std::span<const Term> args);

}  // namespace nsd
