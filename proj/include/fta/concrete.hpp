#pragma once

#include <cstdint>
#include <random>

#include "fta/unify.hpp"

namespace fta {

// Variables whose limit tree under repeated application of s contains the
// parameter variable v. Computed by the bounded iteration
//   occ_0 = {v} \ dom(s),  occ_n = { y | vars(y s) meets occ_{n-1} },
// run to its stationary point.
VarSet occurrence_vars(TermArena& arena, const Subst& s, Variable v);

// Domain variables whose limit tree is ground.
VarSet ground_vars(TermArena& arena, const Subst& s);

// Complement representation of the co-finite set of variables with a
// finite limit tree: the returned set holds exactly the domain variables
// whose limit tree is infinite.
VarSet cyclic_vars(TermArena& arena, const Subst& s);

bool in_hvars(TermArena& arena, const Subst& s, Variable x);

// Independent oracles on the dependency graph of the solved form
// (edge y -> z iff y is a domain variable and z occurs in y's image).
// The limit tree of x is finite iff no cycle is reachable from x;
// it is ground iff no non-domain variable is reachable from x.
bool rt_is_finite(TermArena& arena, const Subst& s, Variable x);
bool rt_is_ground(TermArena& arena, const Subst& s, Variable x);

// Up to n random instances of s: each result is a most general solution
// of s extended with randomly generated extra bindings over vars(s) and
// the variables of interest, so it entails s by construction. Clashing
// samples are discarded and regenerated.
std::vector<Subst> sample_downarrow(TermArena& arena, const Subst& s,
                                    const VarSet& vi, size_t n,
                                    uint64_t seed);

}  // namespace fta
