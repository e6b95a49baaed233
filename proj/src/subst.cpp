#include "fta/subst.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <sstream>

namespace fta {

Subst Subst::make(const TermArena& arena,
                  const std::vector<std::pair<Variable, TermId>>& bindings) {
  Subst s;
  for (const auto& [x, t] : bindings) {
    if (arena.is_var(t) && arena.var_of(t) == x)
      throw SubstError(SubstErrorKind::IdentityBinding,
                       "identity binding in substitution");
    if (!s.bindings_.emplace(x, t).second)
      throw SubstError(SubstErrorKind::DuplicateDomainVar,
                       "duplicate domain variable in substitution");
  }
  // Reject circular subsets {x1 -> x2, ..., xn -> x1} of variable-to-variable
  // bindings. Each domain variable has at most one outgoing edge, so it is
  // enough to follow chains and look for a repeated variable.
  for (const auto& [x, t] : s.bindings_) {
    if (!arena.is_var(t)) continue;
    VarSet seen{x};
    Variable cur = arena.var_of(t);
    while (true) {
      if (seen.contains(cur))
        throw SubstError(SubstErrorKind::CircularVariableChain,
                         "circular variable-to-variable chain");
      auto it = s.bindings_.find(cur);
      if (it == s.bindings_.end() || !arena.is_var(it->second)) break;
      seen.insert(cur);
      cur = arena.var_of(it->second);
    }
  }
  return s;
}

VarSet Subst::domain() const {
  VarSet d;
  for (const auto& [x, t] : bindings_) d.insert(x);
  return d;
}

VarSet Subst::all_vars(const TermArena& arena) const {
  VarSet vs;
  for (const auto& [x, t] : bindings_) {
    vs.insert(x);
    vs.unite(arena.vars(t));
  }
  return vs;
}

std::string Subst::to_string(const TermArena& arena, const VarTable& vt) const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [x, t] : bindings_) {
    if (!first) os << ", ";
    first = false;
    os << vt.name(x) << " -> " << arena.to_string(t, vt);
  }
  os << '}';
  return os.str();
}

namespace {

TermId apply_rec(TermArena& arena, const Subst& s, TermId t,
                 std::unordered_map<TermId, TermId>& memo) {
  auto it = memo.find(t);
  if (it != memo.end()) return it->second;
  TermId out;
  if (arena.is_var(t)) {
    Variable v = arena.var_of(t);
    out = s.binds(v) ? s.image(v) : t;
  } else {
    const std::vector<TermId> args = arena.args_of(t);
    std::vector<TermId> nargs;
    nargs.reserve(args.size());
    bool same = true;
    for (TermId a : args) {
      TermId na = apply_rec(arena, s, a, memo);
      same = same && na == a;
      nargs.push_back(na);
    }
    out = same ? t : arena.app(arena.functor_of(t), nargs);
  }
  memo.emplace(t, out);
  return out;
}

}  // namespace

TermId apply(TermArena& arena, const Subst& s, TermId t) {
  std::unordered_map<TermId, TermId> memo;
  return apply_rec(arena, s, t, memo);
}

TermId replace_var(TermArena& arena, TermId t, Variable x, TermId r) {
  Subst one = Subst::make(arena, {{x, r}});
  return apply(arena, one, t);
}

VarSet vars_after(TermArena& arena, const Subst& s, TermId t, unsigned i) {
  for (unsigned k = 0; k < i; ++k) t = apply(arena, s, t);
  return arena.vars(t);
}

bool is_variable_idempotent(TermArena& arena, const Subst& s) {
  for (const auto& [y, t] : s.bindings()) {
    TermId once = t;
    TermId twice = apply(arena, s, once);
    if (arena.vars(once) != arena.vars(twice)) return false;
  }
  return true;
}

namespace {

// Helper state for s_normalize. Bindings are rewritten in place; every
// rewrite is a single step substituting one binding into another, so the
// result stays in rational solved form and keeps domain and variable set.
struct Normalizer {
  TermArena& arena;
  std::map<Variable, TermId>& b;
  VarSet dom;
  size_t fuel;

  VarSet dvars(TermId t) const {
    return set_intersection(arena.vars(t), dom);
  }

  bool self_looped(Variable y) const { return arena.vars(b.at(y)).contains(y); }

  void substitute(Variable y, Variable x) {
    assert(!(x == y));
    if (--fuel == 0)
      throw std::logic_error("s_normalize: step budget exhausted");
    b[y] = replace_var(arena, b.at(y), x, b.at(x));
  }

  // Strongly connected components of the domain dependency graph
  // (y -> z iff z occurs in y's image), dependencies first.
  std::vector<std::vector<Variable>> sccs() const {
    std::vector<Variable> order;
    for (Variable v : dom) order.push_back(v);
    std::map<Variable, int> index, low;
    std::map<Variable, bool> on_stack;
    std::vector<Variable> stack;
    std::vector<std::vector<Variable>> out;
    int next = 0;
    // Iterative Tarjan.
    struct Frame {
      Variable v;
      std::vector<Variable> succ;
      size_t i;
    };
    for (Variable root : order) {
      if (index.count(root)) continue;
      std::vector<Frame> frames;
      auto push_node = [&](Variable v) {
        index[v] = low[v] = next++;
        stack.push_back(v);
        on_stack[v] = true;
        std::vector<Variable> succ;
        for (Variable z : dvars(b.at(v))) succ.push_back(z);
        frames.push_back({v, std::move(succ), 0});
      };
      push_node(root);
      while (!frames.empty()) {
        Frame& f = frames.back();
        if (f.i < f.succ.size()) {
          Variable w = f.succ[f.i++];
          if (!index.count(w)) {
            push_node(w);
          } else if (on_stack[w]) {
            low[f.v] = std::min(low[f.v], index[w]);
          }
        } else {
          if (low[f.v] == index[f.v]) {
            std::vector<Variable> comp;
            while (true) {
              Variable w = stack.back();
              stack.pop_back();
              on_stack[w] = false;
              comp.push_back(w);
              if (w == f.v) break;
            }
            std::sort(comp.begin(), comp.end());
            out.push_back(std::move(comp));
          }
          Variable v = f.v;
          frames.pop_back();
          if (!frames.empty())
            low[frames.back().v] = std::min(low[frames.back().v], low[v]);
        }
      }
    }
    // Tarjan emits components in reverse topological order of the
    // condensation, which is exactly dependencies-first here.
    return out;
  }

  // Shortest-path distance to y over domain edges restricted to comp;
  // used to close cycles through y.
  std::map<Variable, int> dists_to(Variable y,
                                   const std::vector<Variable>& comp) const {
    VarSet cset;
    for (Variable v : comp) cset.insert(v);
    std::map<Variable, int> dist;
    dist[y] = 0;
    std::deque<Variable> queue{y};
    // BFS over reversed edges.
    while (!queue.empty()) {
      Variable cur = queue.front();
      queue.pop_front();
      for (Variable v : comp) {
        if (dist.count(v)) continue;
        if (dvars(b.at(v)).contains(cur)) {
          dist[v] = dist[cur] + 1;
          queue.push_back(v);
        }
      }
    }
    return dist;
  }

  // Make y's image mention y itself whenever y still lies on a cycle.
  // Self-occurrences are permanent: no later step can remove them.
  void close_loop(Variable y, const std::vector<Variable>& comp) {
    while (!self_looped(y)) {
      auto dist = dists_to(y, comp);
      Variable best{0};
      int best_d = -1;
      for (Variable z : dvars(b.at(y))) {
        if (z == y) continue;
        auto it = dist.find(z);
        if (it == dist.end()) continue;
        if (best_d < 0 || it->second < best_d) {
          best = z;
          best_d = it->second;
        }
      }
      if (best_d < 0) return;  // no cycle through y anymore
      substitute(y, best);
    }
  }

  // z is safe to substitute into others once its own image only mentions
  // settled variables (ones whose images will not change again).
  bool violation(Variable y, Variable z) const {
    const VarSet& zvars = arena.vars(b.at(z));
    return !(zvars.contains(z) && zvars.subset_of(arena.vars(b.at(y))));
  }

  bool has_violation(Variable y) const {
    for (Variable z : dvars(b.at(y)))
      if (!(z == y) && violation(y, z)) return true;
    return false;
  }

  // Removes the violations of y's image. A violating in-component binding
  // is cleaned before being substituted in, or steps that eliminate a
  // non-self-regenerating variable can keep re-introducing it through the
  // still-dirty sibling.
  void fix_binding(Variable y, VarSet& visiting, const VarSet& comp_set) {
    visiting.insert(y);
    bool changed = true;
    while (changed) {
      changed = false;
      for (Variable z : dvars(b.at(y))) {
        if (z == y || !violation(y, z)) continue;
        if (comp_set.contains(z) && !visiting.contains(z) &&
            has_violation(z))
          fix_binding(z, visiting, comp_set);
        substitute(y, z);
        changed = true;
        break;
      }
    }
    visiting.erase(y);
  }

  void process_component(const std::vector<Variable>& comp) {
    // Close every cycle first; afterwards any member still without a
    // self-occurrence hangs below the loops and can only be eliminated.
    for (bool again = true; again;) {
      again = false;
      for (Variable y : comp)
        if (!self_looped(y)) {
          close_loop(y, comp);
          again = again || self_looped(y);
        }
    }
    // Saturate: a violating occurrence of z in y's image is either a
    // non-self-regenerating z (the step removes it) or a self-looped z
    // whose variable set is not yet contained (the step grows y's image).
    VarSet comp_set;
    for (Variable y : comp) comp_set.insert(y);
    bool changed = true;
    while (changed) {
      changed = false;
      for (Variable y : comp) {
        if (!has_violation(y)) continue;
        VarSet visiting;
        fix_binding(y, visiting, comp_set);
        changed = true;
      }
    }
  }

  void run() {
    std::vector<std::vector<Variable>> comps = sccs();
    for (const auto& comp : comps) process_component(comp);
    // Canonical flattening: unfold every referenced binding in place once.
    // Referenced images are self-regenerating with contained variable
    // sets by now, so this changes terms but no variable set.
    for (const auto& comp : comps) {
      for (Variable y : comp) {
        VarSet snapshot = dvars(b.at(y));
        for (Variable z : snapshot) {
          if (z == y || violation(y, z)) continue;
          substitute(y, z);
        }
      }
    }
  }

  bool settled() const {
    for (const auto& [y, t] : b) {
      for (Variable z : dvars(t)) {
        if (z == y) continue;
        if (violation(y, z)) return false;
      }
    }
    return true;
  }
};

}  // namespace

Subst s_normalize(TermArena& arena, const Subst& s) {
  std::map<Variable, TermId> b = s.bindings();
  if (b.empty()) return s;
  VarSet dom = s.domain();
  size_t total_vars = s.all_vars(arena).size();
  size_t fuel = 64 + 16 * b.size() * b.size() * (total_vars + 1);
  Normalizer n{arena, b, dom, fuel};
  n.run();
  if (!n.settled())
    throw std::logic_error("s_normalize: normal form not reached");
  std::vector<std::pair<Variable, TermId>> out(b.begin(), b.end());
  Subst result = Subst::make(arena, out);
  assert(is_variable_idempotent(arena, result));
  return result;
}

}  // namespace fta
