#pragma once

#include <concepts>

#include "fta/sharing.hpp"
#include "fta/subst.hpp"

namespace fta {

// Contract a sharing component must answer for the finiteness analysis:
// query predicates on pairs of terms plus unification, projection and
// join on the component itself. SflState is the shipped instance.
template <typename P>
concept ParamDomain = requires(TermArena& a, const P& d, TermId s, TermId t,
                               Variable x) {
  { p_ind(a, d, s, t) } -> std::convertible_to<bool>;
  { p_ground(a, d, t) } -> std::convertible_to<bool>;
  { p_gfree(a, d, t) } -> std::convertible_to<bool>;
  { p_lin(a, d, t) } -> std::convertible_to<bool>;
  { p_or_lin(a, d, s, t) } -> std::convertible_to<bool>;
  { p_share_lin(a, d, s, t) } -> std::convertible_to<bool>;
  { p_share_same_var(a, d, s, t) } -> std::convertible_to<VarSet>;
  { p_share_with(a, d, t) } -> std::convertible_to<VarSet>;
  { p_amgu(a, d, x, t) } -> std::convertible_to<P>;
  { p_proj(a, d, x) } -> std::convertible_to<P>;
  { p_merge(d, d) } -> std::convertible_to<P>;
};

inline bool p_ind(TermArena& a, const SflState& d, TermId s, TermId t) {
  return sfl_ind(a, d, s, t);
}
inline bool p_ground(TermArena& a, const SflState& d, TermId t) {
  return sfl_ground(a, d, t);
}
inline bool p_gfree(TermArena& a, const SflState& d, TermId t) {
  return sfl_gfree(a, d, t);
}
inline bool p_lin(TermArena& a, const SflState& d, TermId t) {
  return sfl_lin(a, d, t);
}
inline bool p_or_lin(TermArena& a, const SflState& d, TermId s, TermId t) {
  return sfl_or_lin(a, d, s, t);
}
inline bool p_share_lin(TermArena& a, const SflState& d, TermId s, TermId t) {
  return sfl_share_lin(a, d, s, t);
}
inline VarSet p_share_same_var(TermArena& a, const SflState& d, TermId s,
                               TermId t) {
  return sfl_share_same_var(a, d, s, t);
}
inline VarSet p_share_with(TermArena& a, const SflState& d, TermId t) {
  return sfl_share_with(a, d, t);
}
inline SflState p_amgu(TermArena& a, const SflState& d, Variable x, TermId t) {
  return sfl_amgu(a, d, x, t);
}
inline SflState p_proj(TermArena& a, const SflState& d, Variable x) {
  return sfl_proj(a, d, x);
}
inline SflState p_merge(const SflState& a, const SflState& b) {
  return sfl_merge(a, b);
}

static_assert(ParamDomain<SflState>);

// t is a finite tree given the set h of definitely finite variables.
inline bool hterm(TermArena& arena, const VarSet& h, TermId t) {
  return arena.vars(t).subset_of(h);
}

// Finiteness abstraction of a substitution: the registry variables whose
// limit tree is finite.
VarSet alpha_h(TermArena& arena, const Subst& s, const VarSet& vi);

// Effect of the binding x -> t on the finiteness component, by the first
// matching of eight cases ordered from most to least informative.
template <ParamDomain P>
VarSet amgu_h(TermArena& arena, const VarSet& h, const P& p, Variable x,
              TermId t) {
  TermId xt = arena.var(x);
  bool hx = h.contains(x);
  bool ht = hterm(arena, h, t);
  if (hx && p_ground(arena, p, xt)) return set_union(h, arena.vars(t));
  if (ht && p_ground(arena, p, t)) {
    VarSet out = h;
    out.insert(x);
    return out;
  }
  if (hx && ht && p_ind(arena, p, xt, t) && p_or_lin(arena, p, xt, t))
    return h;
  if (hx && ht && p_gfree(arena, p, xt) && p_gfree(arena, p, t)) return h;
  if (hx && ht && p_share_lin(arena, p, xt, t) && p_or_lin(arena, p, xt, t))
    return set_difference(h, p_share_same_var(arena, p, xt, t));
  if (hx && p_lin(arena, p, xt))
    return set_difference(h, p_share_with(arena, p, xt));
  if (ht && p_lin(arena, p, t))
    return set_difference(h, p_share_with(arena, p, t));
  return set_difference(
      h, set_union(p_share_with(arena, p, xt), p_share_with(arena, p, t)));
}

struct HpState {
  VarSet h;
  SflState p;

  friend bool operator==(const HpState&, const HpState&) = default;
};

HpState amgu_hp(TermArena& arena, const HpState& s, Variable x, TermId t);
HpState proj_hp(TermArena& arena, const HpState& s, Variable x);
HpState merge_hp(const HpState& a, const HpState& b);

// Debug form: `h={...} | sh=... f=... l=...`.
std::string hp_to_string(const HpState& s, const VarTable& vt);

}  // namespace fta
