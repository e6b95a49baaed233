#include "fta/depdom.hpp"

namespace fta {

BoolFn amgu_fd(TermArena& arena, BoolFn fd, Variable x, TermId t) {
  BddManager& m = *fd.manager();
  if (arena.vars(t).contains(x)) return fd && !m.var(x);
  return fd && m.var(x).iff(m.conj(arena.vars(t)));
}

BoolFn amgu_gd(TermArena& arena, BoolFn gd, Variable x, TermId t) {
  BddManager& m = *gd.manager();
  VarSet rest = arena.vars(t);
  rest.erase(x);
  return gd && m.var(x).iff(m.conj(rest));
}

VarSet reduce_h_from_fd(const VarSet& h, BoolFn fd) {
  BddManager& m = *fd.manager();
  return m.true_set(fd && m.conj(h));
}

bool consistency_check(const VarSet& h, BoolFn fd) {
  BddManager& m = *fd.manager();
  return h.disjoint(m.false_set(fd && m.conj(h)));
}

BoolFn reduce_gd_from_fd(const VarSet& h, BoolFn fd, BoolFn gd) {
  BddManager& m = *fd.manager();
  VarSet outside = set_difference(m.universe(), h);
  return gd && m.pos_part(m.exists(fd, outside));
}

BoolFn reduce_fd_from_gd(const VarSet& h, BoolFn fd, BoolFn gd) {
  BddManager& m = *fd.manager();
  VarSet outside = set_difference(m.universe(), h);
  return fd && m.exists(gd, outside);
}

BoolFn reduce_gd_from_true(BoolFn fd, BoolFn gd) {
  BddManager& m = *fd.manager();
  return gd && m.conj(m.true_set(fd));
}

}  // namespace fta
