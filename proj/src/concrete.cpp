#include "fta/concrete.hpp"

#include <map>

namespace fta {

VarSet occurrence_vars(TermArena& arena, const Subst& s, Variable v) {
  VarSet dom = s.domain();
  VarSet cur;
  if (!dom.contains(v)) cur.insert(v);
  while (true) {
    VarSet next = set_difference(cur, dom);
    for (const auto& [y, t] : s.bindings())
      if (!arena.vars(t).disjoint(cur)) next.insert(y);
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

VarSet ground_vars(TermArena& arena, const Subst& s) {
  VarSet params = set_difference(s.all_vars(arena), s.domain());
  VarSet out = s.domain();
  for (Variable v : params) out.subtract(occurrence_vars(arena, s, v));
  return out;
}

VarSet cyclic_vars(TermArena& arena, const Subst& s) {
  // Downward iteration on the complement: start from the whole domain and
  // drop variables whose image no longer meets the complement.
  VarSet comp = s.domain();
  while (true) {
    VarSet next;
    for (Variable y : comp)
      if (!arena.vars(s.image(y)).disjoint(comp)) next.insert(y);
    if (next == comp) return comp;
    comp = std::move(next);
  }
}

bool in_hvars(TermArena& arena, const Subst& s, Variable x) {
  return !cyclic_vars(arena, s).contains(x);
}

namespace {

enum class Mark : uint8_t { White, Grey, Black };

// DFS over the solved-form dependency graph looking for a reachable cycle.
bool reaches_cycle(TermArena& arena, const Subst& s, Variable x,
                   std::map<Variable, Mark>& marks) {
  auto it = marks.find(x);
  if (it != marks.end()) {
    if (it->second == Mark::Grey) return true;
    return false;  // black: already known cycle-free
  }
  if (!s.binds(x)) return false;
  marks[x] = Mark::Grey;
  for (Variable z : arena.vars(s.image(x))) {
    if (reaches_cycle(arena, s, z, marks)) {
      marks[x] = Mark::Black;  // mark resolved; caller already failed
      return true;
    }
  }
  marks[x] = Mark::Black;
  return false;
}

}  // namespace

bool rt_is_finite(TermArena& arena, const Subst& s, Variable x) {
  std::map<Variable, Mark> marks;
  return !reaches_cycle(arena, s, x, marks);
}

bool rt_is_ground(TermArena& arena, const Subst& s, Variable x) {
  // Ground iff every variable reachable from x is rewritten further,
  // i.e. no non-domain variable is reachable.
  VarSet reached;
  std::vector<Variable> stack{x};
  while (!stack.empty()) {
    Variable cur = stack.back();
    stack.pop_back();
    if (reached.contains(cur)) continue;
    reached.insert(cur);
    if (!s.binds(cur)) return false;
    for (Variable z : arena.vars(s.image(cur))) stack.push_back(z);
  }
  return true;
}

std::vector<Subst> sample_downarrow(TermArena& arena, const Subst& s,
                                    const VarSet& vi, size_t n,
                                    uint64_t seed) {
  std::mt19937_64 rng(seed);
  VarSet universe = set_union(s.all_vars(arena), vi);
  std::vector<Variable> pv;
  for (Variable v : universe) pv.push_back(v);

  auto random_term = [&](auto&& self, unsigned depth) -> TermId {
    std::uniform_int_distribution<int> kind(0, 3);
    int k = depth == 0 ? (rng() % 2) : kind(rng);
    switch (k) {
      case 0:
        return arena.constant(rng() % 2 ? "a" : "b");
      case 1:
        if (!pv.empty())
          return arena.var(pv[rng() % pv.size()]);
        return arena.constant("a");
      case 2:
        return arena.app("f", {self(self, depth - 1)});
      default:
        return arena.app("g", {self(self, depth - 1), self(self, depth - 1)});
    }
  };

  std::vector<Subst> out;
  size_t attempts = 0;
  while (out.size() < n && attempts < 20 * n + 40) {
    ++attempts;
    std::vector<Equation> extra;
    size_t k = 1 + rng() % 3;
    for (size_t i = 0; i < k && !pv.empty(); ++i) {
      Variable y = pv[rng() % pv.size()];
      TermId t = random_term(random_term, 2);
      if (arena.is_var(t) && arena.var_of(t) == y) continue;
      extra.emplace_back(arena.var(y), t);
    }
    if (auto tau = rat_unify(arena, extra, s)) out.push_back(*tau);
  }
  return out;
}

}  // namespace fta
