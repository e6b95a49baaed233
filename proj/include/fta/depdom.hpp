#pragma once

#include "fta/boolfun.hpp"
#include "fta/term.hpp"

namespace fta {

// Finite-tree dependencies: arbitrary Boolean functions over the registry,
// accumulating permanent finiteness relationships. Groundness dependencies
// use the positive fragment of the same carrier.

// Binding x -> t: ties the finiteness of x to the variables of t, or
// records that x is irrevocably infinite when the binding is cyclic.
BoolFn amgu_fd(TermArena& arena, BoolFn fd, Variable x, TermId t);

// Binding x -> t on groundness dependencies; a cyclic binding ties x to
// the remaining variables of t. Preserves the positive fragment.
BoolFn amgu_gd(TermArena& arena, BoolFn gd, Variable x, TermId t);

inline BoolFn fd_project(BoolFn fd, Variable x) {
  return fd.manager()->exists(fd, x);
}
inline BoolFn gd_project(BoolFn gd, Variable x) {
  return gd.manager()->exists(gd, x);
}
inline BoolFn fd_merge(BoolFn a, BoolFn b) { return a || b; }
inline BoolFn gd_merge(BoolFn a, BoolFn b) { return a || b; }

// Finiteness recovered from dependencies: variables forced true once the
// currently finite ones are asserted.
VarSet reduce_h_from_fd(const VarSet& h, BoolFn fd);

// The two components describe a non-empty intersection only if no
// currently finite variable is forced infinite.
bool consistency_check(const VarSet& h, BoolFn fd);

// Cross-domain refinements through the finiteness component.
BoolFn reduce_gd_from_fd(const VarSet& h, BoolFn fd, BoolFn gd);
BoolFn reduce_fd_from_gd(const VarSet& h, BoolFn fd, BoolFn gd);
// Groundness refined by unconditionally finite variables.
BoolFn reduce_gd_from_true(BoolFn fd, BoolFn gd);

}  // namespace fta
