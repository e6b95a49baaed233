#include "fta/unify.hpp"

#include <deque>
#include <map>
#include <unordered_map>

namespace fta {

namespace {

class UnionFind {
 public:
  TermId find(TermId t) {
    auto it = parent_.find(t);
    if (it == parent_.end()) {
      parent_[t] = t;
      return t;
    }
    TermId root = t;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[t] != root) {
      TermId next = parent_[t];
      parent_[t] = root;
      t = next;
    }
    return root;
  }

  void link(TermId a, TermId b) { parent_[a] = b; }

  std::vector<TermId> members() const {
    std::vector<TermId> out;
    for (const auto& [t, p] : parent_) out.push_back(t);
    return out;
  }

 private:
  std::map<TermId, TermId> parent_;
};

}  // namespace

std::vector<Equation> equations_of(TermArena& arena, const Subst& s) {
  std::vector<Equation> eqs;
  for (const auto& [x, t] : s.bindings()) eqs.emplace_back(arena.var(x), t);
  return eqs;
}

std::optional<Subst> rat_unify(TermArena& arena,
                               const std::vector<Equation>& eqs,
                               const Subst& base) {
  UnionFind uf;
  // Per class root: a functor term giving the class its structure, if any.
  std::map<TermId, TermId> schema;

  std::deque<Equation> work(eqs.begin(), eqs.end());
  for (const auto& eq : equations_of(arena, base)) work.push_back(eq);

  auto note = [&](TermId root, TermId t) -> bool {
    // Attach a functor term to the class; decompose against an existing one.
    if (arena.is_var(t)) return true;
    auto it = schema.find(root);
    if (it == schema.end()) {
      schema[root] = t;
      return true;
    }
    TermId other = it->second;
    if (other == t) return true;
    if (arena.functor_of(other) != arena.functor_of(t)) return false;
    const auto& a = arena.args_of(other);
    const auto& b = arena.args_of(t);
    for (size_t i = 0; i < a.size(); ++i) work.emplace_back(a[i], b[i]);
    return true;
  };

  while (!work.empty()) {
    auto [s, t] = work.front();
    work.pop_front();
    TermId rs = uf.find(s);
    TermId rt = uf.find(t);
    if (rs == rt) continue;
    // Merge rt into rs; keep rs as root.
    auto had_it = schema.find(rt);
    bool has_had = had_it != schema.end();
    TermId had = has_had ? had_it->second : 0;
    uf.link(rt, rs);
    if (!note(rs, s)) return std::nullopt;
    if (!note(rs, t)) return std::nullopt;
    if (has_had && !note(rs, had)) return std::nullopt;
    schema.erase(rt);
  }

  // Read back one canonical solved form.
  std::map<TermId, VarSet> class_vars;
  std::map<TermId, TermId> class_schema;
  for (TermId t : uf.members()) {
    TermId r = uf.find(t);
    if (arena.is_var(t)) class_vars[r].insert(arena.var_of(t));
    auto it = schema.find(r);
    if (it != schema.end()) class_schema[r] = it->second;
  }

  // Canonical term of a class: its representative variable when it has
  // one, otherwise the structure with canonicalized arguments. Classes
  // without variables cannot be cyclic, so the recursion is well founded.
  std::map<TermId, TermId> canon_memo;
  auto canon = [&](auto&& self, TermId root) -> TermId {
    auto it = canon_memo.find(root);
    if (it != canon_memo.end()) return it->second;
    auto cv = class_vars.find(root);
    if (cv != class_vars.end()) {
      TermId out = arena.var(cv->second[0]);
      canon_memo[root] = out;
      return out;
    }
    // Untouched singleton classes are their own schema.
    auto cs = class_schema.find(root);
    TermId sc = cs != class_schema.end() ? cs->second : root;
    if (arena.is_var(sc)) {
      canon_memo[root] = sc;
      return sc;
    }
    std::vector<TermId> nargs;
    for (TermId a : arena.args_of(sc)) nargs.push_back(self(self, uf.find(a)));
    TermId out = arena.app(arena.functor_of(sc), nargs);
    canon_memo[root] = out;
    return out;
  };

  std::vector<std::pair<Variable, TermId>> bindings;
  for (const auto& [root, vars] : class_vars) {
    Variable rep = vars[0];
    for (Variable v : vars)
      if (!(v == rep)) bindings.emplace_back(v, arena.var(rep));
    auto sc = class_schema.find(root);
    if (sc != class_schema.end()) {
      std::vector<TermId> nargs;
      for (TermId a : arena.args_of(sc->second))
        nargs.push_back(canon(canon, uf.find(a)));
      bindings.emplace_back(rep,
                            arena.app(arena.functor_of(sc->second), nargs));
    }
  }
  return Subst::make(arena, bindings);
}

}  // namespace fta
