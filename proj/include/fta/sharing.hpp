#pragma once

#include <set>
#include <string>

#include "fta/subst.hpp"

namespace fta {

// A set of sharing groups; each group is a non-empty subset of the
// variables of interest and collects variables that may be bound to terms
// with a common parameter variable.
using SharingSet = std::set<VarSet>;

VarSet sharing_vars(const SharingSet& sh);

// Groups meeting V.
SharingSet sh_rel(const VarSet& v, const SharingSet& sh);
// Groups disjoint from V.
SharingSet sh_irrel(const VarSet& v, const SharingSet& sh);
// All unions of one or more groups.
SharingSet sh_star(const SharingSet& sh);
// Pairwise unions.
SharingSet sh_bin(const SharingSet& a, const SharingSet& b);
// Coupling of x with t: keeps groups away from the binding and re-couples
// the rest through the variables of t other than x.
SharingSet sh_cyclic(TermArena& arena, Variable x, TermId t,
                     const SharingSet& sh);
// Projects x away: x becomes a fresh unconstrained variable.
SharingSet sh_proj(const SharingSet& sh, Variable x);

// Set-sharing with definite freeness and definite linearity over one
// registry of variables of interest. The bottom element describes no
// concrete state and is absorbing for unification.
class SflState {
 public:
  SflState() = default;
  static SflState top(const VarSet& vi);     // every variable its own group
  static SflState bottom(const VarSet& vi);  // <empty, VI, VI>
  static SflState make(const VarSet& vi, SharingSet sh, VarSet free,
                       VarSet lin);

  bool is_bottom() const { return bottom_; }
  const VarSet& vi() const { return vi_; }
  const SharingSet& sh() const { return sh_; }
  const VarSet& free() const { return free_; }
  const VarSet& lin() const { return lin_; }

  friend bool operator==(const SflState&, const SflState&) = default;

  std::string to_string(const VarTable& vt) const;

 private:
  VarSet vi_;
  SharingSet sh_;
  VarSet free_;
  VarSet lin_;
  bool bottom_ = false;
};

// Query predicates answering the parameter-domain interface for one state.
bool sfl_ind(TermArena& arena, const SflState& d, TermId s, TermId t);
bool sfl_ground(TermArena& arena, const SflState& d, TermId t);
bool sfl_occ_lin(TermArena& arena, const SflState& d, Variable y, TermId t);
bool sfl_share_lin(TermArena& arena, const SflState& d, TermId s, TermId t);
bool sfl_free(TermArena& arena, const SflState& d, TermId t);
bool sfl_gfree(TermArena& arena, const SflState& d, TermId t);
bool sfl_lin(TermArena& arena, const SflState& d, TermId t);
bool sfl_or_lin(TermArena& arena, const SflState& d, TermId s, TermId t);
VarSet sfl_share_same_var(TermArena& arena, const SflState& d, TermId s,
                          TermId t);
VarSet sfl_share_with(TermArena& arena, const SflState& d, TermId t);

struct SflPredicates {
  bool ind, ground_s, ground_t, gfree_s, gfree_t, lin_s, lin_t;
  bool or_lin, share_lin, free_s, free_t;
};
SflPredicates sfl_predicates(TermArena& arena, const SflState& d, TermId s,
                             TermId t);

// Effect of the binding x -> t.
SflState sfl_amgu(TermArena& arena, const SflState& d, Variable x, TermId t);
// Projecting x away: x becomes free, linear and unaliased.
SflState sfl_proj(TermArena& arena, const SflState& d, Variable x);
// Least upper bound (control-flow join).
SflState sfl_merge(const SflState& a, const SflState& b);
// Component-wise order.
bool sfl_leq(const SflState& a, const SflState& b);

// Exact abstraction of a substitution whose images are all finite trees:
// occurrence groups restricted to the registry, definitely free and
// definitely linear variables read off the limit trees.
SflState sfl_alpha(TermArena& arena, const Subst& s, const VarSet& vi);

}  // namespace fta
