#pragma once

#include <random>
#include <vector>

#include "fta/concrete.hpp"
#include "fta/subst.hpp"

namespace fta::test {

// Shared fixture: an arena, a variable table and a few interned variables.
struct Ctx {
  TermArena arena;
  VarTable vt;

  Variable v(const std::string& name) { return vt.intern(name); }
  TermId V(const std::string& name) { return arena.var(v(name)); }
  TermId c(const std::string& name) { return arena.constant(name); }
  TermId f(TermId a) { return arena.app("f", {a}); }
  TermId f2(TermId a, TermId b) { return arena.app("f", {a, b}); }
  TermId g(TermId a) { return arena.app("g", {a}); }
  TermId g2(TermId a, TermId b) { return arena.app("g", {a, b}); }

  Subst subst(std::vector<std::pair<std::string, TermId>> bs) {
    std::vector<std::pair<Variable, TermId>> out;
    for (auto& [name, t] : bs) out.emplace_back(v(name), t);
    return Subst::make(arena, out);
  }
};

// Random substitution in rational solved form over at most max_vars
// variables with right-hand sides of depth at most max_depth.
inline Subst random_subst(Ctx& ctx, std::mt19937_64& rng, size_t max_vars = 6,
                          unsigned max_depth = 3) {
  static const char* names[] = {"u", "v", "w", "x", "y", "z"};
  size_t nvars = 1 + rng() % max_vars;
  std::vector<Variable> vars;
  for (size_t i = 0; i < nvars; ++i) vars.push_back(ctx.v(names[i]));

  auto term = [&](auto&& self, unsigned depth) -> TermId {
    unsigned pick = rng() % 4;
    if (depth == 0 || pick == 0)
      return rng() % 2 ? ctx.arena.constant(rng() % 2 ? "a" : "b")
                       : ctx.arena.var(vars[rng() % vars.size()]);
    if (pick == 1) return ctx.arena.app("f", {self(self, depth - 1)});
    if (pick == 2)
      return ctx.arena.app("g",
                           {self(self, depth - 1), self(self, depth - 1)});
    return ctx.arena.var(vars[rng() % vars.size()]);
  };

  while (true) {
    std::vector<std::pair<Variable, TermId>> bs;
    VarSet used;
    size_t nbind = rng() % (nvars + 1);
    for (size_t i = 0; i < nbind; ++i) {
      Variable x = vars[rng() % vars.size()];
      if (used.contains(x)) continue;
      used.insert(x);
      TermId t = term(term, max_depth);
      if (ctx.arena.is_var(t) && ctx.arena.var_of(t) == x) continue;
      bs.emplace_back(x, t);
    }
    try {
      return Subst::make(ctx.arena, bs);
    } catch (const SubstError&) {
      // circular variable chain: resample
    }
  }
}

// Random substitution whose limit trees are all finite.
inline Subst random_finite_subst(Ctx& ctx, std::mt19937_64& rng,
                                 size_t max_vars = 6,
                                 unsigned max_depth = 3) {
  while (true) {
    Subst s = random_subst(ctx, rng, max_vars, max_depth);
    if (cyclic_vars(ctx.arena, s).empty()) return s;
  }
}

}  // namespace fta::test
