#include "fta/sharing.hpp"

#include <sstream>

#include "fta/concrete.hpp"

namespace fta {

VarSet sharing_vars(const SharingSet& sh) {
  VarSet out;
  for (const VarSet& g : sh) out.unite(g);
  return out;
}

SharingSet sh_rel(const VarSet& v, const SharingSet& sh) {
  SharingSet out;
  for (const VarSet& g : sh)
    if (!g.disjoint(v)) out.insert(g);
  return out;
}

SharingSet sh_irrel(const VarSet& v, const SharingSet& sh) {
  SharingSet out;
  for (const VarSet& g : sh)
    if (g.disjoint(v)) out.insert(g);
  return out;
}

SharingSet sh_star(const SharingSet& sh) {
  // Closure of sh under binary union.
  SharingSet out = sh;
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<VarSet> add;
    for (const VarSet& a : out)
      for (const VarSet& b : sh) {
        VarSet u = set_union(a, b);
        if (!out.count(u)) add.push_back(u);
      }
    for (VarSet& u : add) changed |= out.insert(std::move(u)).second;
  }
  return out;
}

SharingSet sh_bin(const SharingSet& a, const SharingSet& b) {
  SharingSet out;
  for (const VarSet& x : a)
    for (const VarSet& y : b) out.insert(set_union(x, y));
  return out;
}

SharingSet sh_cyclic(TermArena& arena, Variable x, TermId t,
                     const SharingSet& sh) {
  VarSet xt = arena.vars(t);
  xt.insert(x);
  VarSet t_minus_x = arena.vars(t);
  t_minus_x.erase(x);
  SharingSet out = sh_irrel(xt, sh);
  for (const VarSet& g : sh_rel(t_minus_x, sh)) out.insert(g);
  return out;
}

SharingSet sh_proj(const SharingSet& sh, Variable x) {
  SharingSet out;
  out.insert(VarSet{x});
  VarSet just_x{x};
  for (const VarSet& g : sh) {
    if (g == just_x) continue;
    VarSet r = g;
    r.erase(x);
    out.insert(r);
  }
  return out;
}

SflState SflState::top(const VarSet& vi) {
  SharingSet sh;
  for (Variable v : vi) sh.insert(VarSet{v});
  return make(vi, std::move(sh), vi, vi);
}

SflState SflState::bottom(const VarSet& vi) {
  SflState d;
  d.vi_ = vi;
  d.free_ = vi;
  d.lin_ = vi;
  d.bottom_ = true;
  return d;
}

SflState SflState::make(const VarSet& vi, SharingSet sh, VarSet free,
                        VarSet lin) {
  SflState d;
  d.vi_ = vi;
  d.sh_ = std::move(sh);
  d.free_ = std::move(free);
  // Variables with no sharing group are ground, hence linear; free
  // variables are linear as well.
  lin.unite(set_difference(vi, sharing_vars(d.sh_)));
  lin.unite(d.free_);
  d.lin_ = std::move(lin);
  return d;
}

std::string SflState::to_string(const VarTable& vt) const {
  if (bottom_) return "bottom";
  std::ostringstream os;
  auto set_str = [&](const VarSet& s) {
    std::ostringstream o;
    o << '{';
    bool first = true;
    for (Variable v : s) {
      if (!first) o << ',';
      first = false;
      o << vt.name(v);
    }
    o << '}';
    return o.str();
  };
  os << "sh={";
  bool first = true;
  for (const VarSet& g : sh_) {
    if (!first) os << ',';
    first = false;
    os << set_str(g);
  }
  os << "} f=" << set_str(free_) << " l=" << set_str(lin_);
  return os.str();
}

bool sfl_ind(TermArena& arena, const SflState& d, TermId s, TermId t) {
  SharingSet rs = sh_rel(arena.vars(s), d.sh());
  SharingSet rt = sh_rel(arena.vars(t), d.sh());
  for (const VarSet& g : rs)
    if (rt.count(g)) return false;
  return true;
}

bool sfl_ground(TermArena& arena, const SflState& d, TermId t) {
  return arena.vars(t).disjoint(sharing_vars(d.sh()));
}

bool sfl_occ_lin(TermArena& arena, const SflState& d, Variable y, TermId t) {
  if (sfl_ground(arena, d, arena.var(y))) return true;
  if (!arena.occurs_linearly(y, t)) return false;
  if (!d.lin().contains(y)) return false;
  for (Variable z : arena.vars(t))
    if (!(z == y) && !sfl_ind(arena, d, arena.var(y), arena.var(z)))
      return false;
  return true;
}

bool sfl_share_lin(TermArena& arena, const SflState& d, TermId s, TermId t) {
  SharingSet rs = sh_rel(arena.vars(s), d.sh());
  SharingSet rt = sh_rel(arena.vars(t), d.sh());
  SharingSet common;
  for (const VarSet& g : rs)
    if (rt.count(g)) common.insert(g);
  for (Variable y : sharing_vars(common)) {
    if (arena.vars(s).contains(y) && !sfl_occ_lin(arena, d, y, s))
      return false;
    if (arena.vars(t).contains(y) && !sfl_occ_lin(arena, d, y, t))
      return false;
  }
  return true;
}

bool sfl_free(TermArena& arena, const SflState& d, TermId t) {
  return arena.is_var(t) && d.free().contains(arena.var_of(t));
}

bool sfl_gfree(TermArena& arena, const SflState& d, TermId t) {
  return sfl_ground(arena, d, t) || sfl_free(arena, d, t);
}

bool sfl_lin(TermArena& arena, const SflState& d, TermId t) {
  for (Variable y : arena.vars(t))
    if (!sfl_occ_lin(arena, d, y, t)) return false;
  return true;
}

bool sfl_or_lin(TermArena& arena, const SflState& d, TermId s, TermId t) {
  return sfl_lin(arena, d, s) || sfl_lin(arena, d, t);
}

VarSet sfl_share_same_var(TermArena& arena, const SflState& d, TermId s,
                          TermId t) {
  SharingSet rs = sh_rel(arena.vars(s), d.sh());
  SharingSet rt = sh_rel(arena.vars(t), d.sh());
  SharingSet common;
  for (const VarSet& g : rs)
    if (rt.count(g)) common.insert(g);
  return sharing_vars(common);
}

VarSet sfl_share_with(TermArena& arena, const SflState& d, TermId t) {
  return sharing_vars(sh_rel(arena.vars(t), d.sh()));
}

SflPredicates sfl_predicates(TermArena& arena, const SflState& d, TermId s,
                             TermId t) {
  SflPredicates p;
  p.ind = sfl_ind(arena, d, s, t);
  p.ground_s = sfl_ground(arena, d, s);
  p.ground_t = sfl_ground(arena, d, t);
  p.gfree_s = sfl_gfree(arena, d, s);
  p.gfree_t = sfl_gfree(arena, d, t);
  p.lin_s = sfl_lin(arena, d, s);
  p.lin_t = sfl_lin(arena, d, t);
  p.or_lin = sfl_or_lin(arena, d, s, t);
  p.share_lin = sfl_share_lin(arena, d, s, t);
  p.free_s = sfl_free(arena, d, s);
  p.free_t = sfl_free(arena, d, t);
  return p;
}

SflState sfl_amgu(TermArena& arena, const SflState& d, Variable x, TermId t) {
  if (d.is_bottom()) return d;
  TermId xt = arena.var(x);
  const SharingSet& sh = d.sh();
  SharingSet shx = sh_rel(VarSet{x}, sh);
  SharingSet sht = sh_rel(arena.vars(t), sh);
  SharingSet shxt;
  for (const VarSet& g : shx)
    if (sht.count(g)) shxt.insert(g);
  VarSet xt_vars = arena.vars(t);
  xt_vars.insert(x);
  SharingSet sh_minus = sh_irrel(xt_vars, sh);

  bool free_x = sfl_free(arena, d, xt);
  bool free_t = sfl_free(arena, d, t);
  bool lin_x = sfl_lin(arena, d, xt);
  bool lin_t = sfl_lin(arena, d, t);

  SharingSet sh2;
  if (free_x || free_t) {
    sh2 = sh_bin(shx, sht);
  } else if (lin_x && lin_t) {
    SharingSet star = sh_star(shxt);
    SharingSet left = shx;
    for (const VarSet& g : sh_bin(shx, star)) left.insert(g);
    SharingSet right = sht;
    for (const VarSet& g : sh_bin(sht, star)) right.insert(g);
    sh2 = sh_bin(left, right);
  } else if (lin_x) {
    sh2 = sh_bin(sh_star(shx), sht);
  } else if (lin_t) {
    sh2 = sh_bin(shx, sh_star(sht));
  } else {
    sh2 = sh_bin(sh_star(shx), sh_star(sht));
  }

  SharingSet merged = sh_minus;
  for (const VarSet& g : sh2) merged.insert(g);
  SharingSet sh_new = sh_cyclic(arena, x, t, merged);

  VarSet sx = sharing_vars(shx);
  VarSet st = sharing_vars(sht);

  VarSet f_new;
  if (free_x && free_t)
    f_new = d.free();
  else if (free_x)
    f_new = set_difference(d.free(), sx);
  else if (free_t)
    f_new = set_difference(d.free(), st);
  else
    f_new = set_difference(d.free(), set_union(sx, st));

  VarSet l2;
  if (lin_x && lin_t)
    l2 = set_difference(d.lin(), set_intersection(sx, st));
  else if (lin_x)
    l2 = set_difference(d.lin(), sx);
  else if (lin_t)
    l2 = set_difference(d.lin(), st);
  else
    l2 = set_difference(d.lin(), set_union(sx, st));

  return SflState::make(d.vi(), std::move(sh_new), std::move(f_new),
                        std::move(l2));
}

SflState sfl_proj(TermArena& arena, const SflState& d, Variable x) {
  (void)arena;
  if (d.is_bottom()) return d;
  VarSet f = d.free();
  f.insert(x);
  VarSet l = d.lin();
  l.insert(x);
  return SflState::make(d.vi(), sh_proj(d.sh(), x), std::move(f),
                        std::move(l));
}

SflState sfl_merge(const SflState& a, const SflState& b) {
  if (a.is_bottom()) return b;
  if (b.is_bottom()) return a;
  SharingSet sh = a.sh();
  for (const VarSet& g : b.sh()) sh.insert(g);
  return SflState::make(a.vi(), std::move(sh),
                        set_intersection(a.free(), b.free()),
                        set_intersection(a.lin(), b.lin()));
}

bool sfl_leq(const SflState& a, const SflState& b) {
  if (a.is_bottom()) return true;
  if (b.is_bottom()) return false;
  for (const VarSet& g : a.sh())
    if (!b.sh().count(g)) return false;
  return b.free().subset_of(a.free()) && b.lin().subset_of(a.lin());
}

SflState sfl_alpha(TermArena& arena, const Subst& s, const VarSet& vi) {
  // Only meaningful when every limit tree is finite; the limit trees are
  // then reached by finitely many applications.
  VarSet dom = s.domain();
  VarSet params = set_difference(set_union(s.all_vars(arena), vi), dom);
  SharingSet sh;
  for (Variable v : params) {
    VarSet g = set_intersection(occurrence_vars(arena, s, v), vi);
    if (!g.empty()) sh.insert(g);
  }
  unsigned steps = static_cast<unsigned>(s.size()) + 1;
  VarSet free, lin;
  for (Variable x : vi) {
    TermId rt = arena.var(x);
    for (unsigned i = 0; i < steps; ++i) rt = apply(arena, s, rt);
    if (arena.is_var(rt)) free.insert(x);
    if (arena.is_linear(rt)) lin.insert(x);
  }
  return SflState::make(vi, std::move(sh), std::move(free), std::move(lin));
}

}  // namespace fta
