#include "fta/hdomain.hpp"

#include <sstream>

#include "fta/concrete.hpp"

namespace fta {

VarSet alpha_h(TermArena& arena, const Subst& s, const VarSet& vi) {
  return set_difference(vi, cyclic_vars(arena, s));
}

HpState amgu_hp(TermArena& arena, const HpState& s, Variable x, TermId t) {
  // The finiteness update reads the sharing component before the binding.
  VarSet h = amgu_h(arena, s.h, s.p, x, t);
  return HpState{std::move(h), sfl_amgu(arena, s.p, x, t)};
}

HpState proj_hp(TermArena& arena, const HpState& s, Variable x) {
  VarSet h = s.h;
  h.insert(x);
  return HpState{std::move(h), sfl_proj(arena, s.p, x)};
}

HpState merge_hp(const HpState& a, const HpState& b) {
  return HpState{set_intersection(a.h, b.h), sfl_merge(a.p, b.p)};
}

std::string hp_to_string(const HpState& s, const VarTable& vt) {
  std::ostringstream os;
  os << "h={";
  bool first = true;
  for (Variable v : s.h) {
    if (!first) os << ',';
    first = false;
    os << vt.name(v);
  }
  os << "} | " << s.p.to_string(vt);
  return os.str();
}

}  // namespace fta
