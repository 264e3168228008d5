#pragma once

#include "nsd/term.hpp"

// Closed System T definitions of arithmetic used across the library.
// Truth values are numbers with 0 meaning true.
namespace nsd::prelude {

Term add();    // N -> N -> N
Term mul();    // N -> N -> N
Term pred();   // N -> N
Term monus();  // N -> N -> N, truncated subtraction
Term eq();     // N -> N -> N, 0 iff the arguments are equal
Term lt();     // N -> N -> N, 0 iff a < b
Term mod2();   // N -> N
Term seq_eq(); // N* -> N* -> N, 0 iff same length and components

Term add(const Term& a, const Term& b);
Term mul(const Term& a, const Term& b);
Term eq(const Term& a, const Term& b);

// rec(a; \_. \_. b; e): a when e = 0, else b. Both branches have type `t`.
Term ifz(const Term& e, const Term& a, const Term& b, const Type& t);

}  // namespace nsd::prelude
