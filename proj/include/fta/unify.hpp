#pragma once

#include <optional>
#include <vector>

#include "fta/subst.hpp"

namespace fta {

using Equation = std::pair<TermId, TermId>;

// Most general solution of the equation set in the rational-tree theory:
// union-find over term nodes with functor decomposition and no
// occurs-check. Cyclic solutions are fine; the only failure mode is a
// clash between distinct functors (or ranks), reported as nullopt.
//
// Of the many equivalent solved forms, one canonical element is returned:
// per unification class the smallest variable (by id) is the
// representative and all other variables of the class are bound to it.
std::optional<Subst> rat_unify(TermArena& arena,
                               const std::vector<Equation>& eqs,
                               const Subst& base = {});

// Convenience: the substitution seen as its equation set.
std::vector<Equation> equations_of(TermArena& arena, const Subst& s);

}  // namespace fta
