#pragma once

#include <string>

#include "unihardy/radial_expr.hpp"

namespace unihardy {

// Parses the prefix expression grammar used by the CLI:
//
//   expr     := number | call
//   call     := name '(' args ')'
//   args     := (arg (',' arg)*)?
//   arg      := expr | name '=' number
//
// functions (positional / keyword arguments):
//   const(v)                  constant v (bare numbers work too)
//   powr(alpha)               r^alpha
//   bnd(c=,k=[,R=1])          (1-(r/R)^c)^k
//   logr([R=1])               log(R/r)
//   bump(r0,r1)               C-inf bump, exact plateau 1 on the middle half
//   rampup(r0,r1)             0 -> 1 C-inf ramp
//   rampdown(r0,r1)           1 -> 0 C-inf ramp
//   mul(e1,e2,...)            product
//   add(e1,e2,...)            sum
//   neg(e)                    negation
//   bndfam(k=,delta=,c=[,R=1])    boundary test family phi_delta (1-(r/R)^c)^k
//   originfam(k=,delta=)          origin test family phi_delta r^k
//   extremal(b=,p=,c=[,R=1])      ((r/R)^{-c}-1)^{(b-1)/p}
//
// Throws errc::parse_error with a position-annotated message.
RadialExpr parse_radial_expr(const std::string& text);

}  // namespace unihardy
