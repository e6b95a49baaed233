#include "fta/boolfun.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <sstream>

namespace fta {

BoolFn BoolFn::operator&&(BoolFn o) const { return mgr_->ite(*this, o, mgr_->bot()); }
BoolFn BoolFn::operator||(BoolFn o) const { return mgr_->ite(*this, mgr_->top(), o); }
BoolFn BoolFn::operator!() const { return mgr_->ite(*this, mgr_->bot(), mgr_->top()); }
BoolFn BoolFn::iff(BoolFn o) const { return mgr_->ite(*this, o, !o); }
BoolFn BoolFn::implies(BoolFn o) const { return mgr_->ite(*this, o, mgr_->top()); }

BddManager::BddManager(VarSet universe, size_t node_budget)
    : universe_(std::move(universe)), node_budget_(node_budget) {
  for (Variable v : universe_) {
    var_level_[v.id] = static_cast<uint32_t>(level_var_.size());
    level_var_.push_back(v.id);
  }
  uint32_t sentinel = static_cast<uint32_t>(level_var_.size());
  nodes_.push_back({sentinel, 0, 0});  // 0: false terminal
  nodes_.push_back({sentinel, 1, 1});  // 1: true terminal
  last_use_.assign(level_var_.size(), 0);
}

uint32_t BddManager::level_of(Variable x) const {
  auto it = var_level_.find(x.id);
  if (it == var_level_.end())
    throw UnknownVariable("variable not in the boolean universe");
  return it->second;
}

uint32_t BddManager::mk(uint32_t level, uint32_t lo, uint32_t hi) {
  if (lo == hi) return lo;
  std::array<uint32_t, 3> key{level, lo, hi};
  auto it = unique_.find(key);
  if (it != unique_.end()) return it->second;
  uint32_t id = static_cast<uint32_t>(nodes_.size());
  nodes_.push_back({level, lo, hi});
  unique_.emplace(key, id);
  return id;
}

BoolFn BddManager::var(Variable x) {
  uint32_t level = level_of(x);
  touch(level);
  return BoolFn(this, mk(level, 0, 1));
}

BoolFn BddManager::conj(const VarSet& xs) {
  BoolFn out = top();
  for (Variable x : xs) out = out && var(x);
  return out;
}

uint32_t BddManager::ite_rec(uint32_t f, uint32_t g, uint32_t h) {
  if (f == 1) return g;
  if (f == 0) return h;
  if (g == h) return g;
  if (g == 1 && h == 0) return f;
  std::array<uint32_t, 3> key{f, g, h};
  auto it = ite_cache_.find(key);
  if (it != ite_cache_.end()) return it->second;
  uint32_t m = std::min({nodes_[f].level, nodes_[g].level, nodes_[h].level});
  auto cof = [&](uint32_t n, bool hi) {
    return nodes_[n].level == m ? (hi ? nodes_[n].hi : nodes_[n].lo) : n;
  };
  uint32_t lo = ite_rec(cof(f, false), cof(g, false), cof(h, false));
  uint32_t hi = ite_rec(cof(f, true), cof(g, true), cof(h, true));
  uint32_t out = mk(m, lo, hi);
  ite_cache_.emplace(key, out);
  return out;
}

BoolFn BddManager::ite(BoolFn f, BoolFn g, BoolFn h) {
  assert(f.manager() == this && g.manager() == this && h.manager() == this);
  return BoolFn(this, ite_rec(f.node(), g.node(), h.node()));
}

uint32_t BddManager::restrict_rec(uint32_t f, uint32_t level, bool value) {
  if (f <= 1 || nodes_[f].level > level) return f;
  auto key = std::make_tuple(f, level, value ? 1 : 0);
  auto it = unary_cache_.find(key);
  if (it != unary_cache_.end()) return it->second;
  uint32_t out;
  if (nodes_[f].level == level) {
    out = value ? nodes_[f].hi : nodes_[f].lo;
  } else {
    out = mk(nodes_[f].level, restrict_rec(nodes_[f].lo, level, value),
             restrict_rec(nodes_[f].hi, level, value));
  }
  unary_cache_.emplace(key, out);
  return out;
}

BoolFn BddManager::restrict_to(BoolFn f, Variable x, bool value) {
  uint32_t level = level_of(x);
  touch(level);
  return BoolFn(this, restrict_rec(f.node(), level, value));
}

BoolFn BddManager::rename(BoolFn f, Variable x, Variable y) {
  BoolFn f1 = restrict_to(f, x, true);
  BoolFn f0 = restrict_to(f, x, false);
  return ite(var(y), f1, f0);
}

uint32_t BddManager::exists_rec(uint32_t f, uint32_t level) {
  if (f <= 1 || nodes_[f].level > level) return f;
  auto key = std::make_tuple(f, level, 2);
  auto it = unary_cache_.find(key);
  if (it != unary_cache_.end()) return it->second;
  uint32_t out;
  if (nodes_[f].level == level) {
    out = ite_rec(nodes_[f].lo, 1, nodes_[f].hi);
  } else {
    out = mk(nodes_[f].level, exists_rec(nodes_[f].lo, level),
             exists_rec(nodes_[f].hi, level));
  }
  unary_cache_.emplace(key, out);
  return out;
}

BoolFn BddManager::exists(BoolFn f, Variable x) {
  uint32_t level = level_of(x);
  touch(level);
  return BoolFn(this, exists_rec(f.node(), level));
}

BoolFn BddManager::exists(BoolFn f, const VarSet& xs) {
  for (Variable x : xs) f = exists(f, x);
  return f;
}

bool BddManager::entails(BoolFn f, BoolFn g) {
  return (f && !g).is_bot();
}

bool BddManager::eval(BoolFn f, const VarSet& true_vars) const {
  uint32_t n = f.node();
  while (n > 1) {
    Variable v{level_var_[nodes_[n].level]};
    n = true_vars.contains(v) ? nodes_[n].hi : nodes_[n].lo;
  }
  return n == 1;
}

bool BddManager::is_pos(BoolFn f) const {
  uint32_t n = f.node();
  while (n > 1) n = nodes_[n].hi;
  return n == 1;
}

BoolFn BddManager::pos_part(BoolFn f) { return f || conj(universe_); }

VarSet BddManager::true_set(BoolFn f) {
  VarSet out;
  for (Variable x : universe_)
    if (restrict_rec(f.node(), level_of(x), false) == 0) out.insert(x);
  return out;
}

VarSet BddManager::false_set(BoolFn f) {
  VarSet out;
  for (Variable x : universe_)
    if (restrict_rec(f.node(), level_of(x), true) == 0) out.insert(x);
  return out;
}

VarSet BddManager::support(BoolFn f) const {
  std::vector<uint32_t> stack{f.node()};
  std::vector<bool> seen(nodes_.size(), false);
  VarSet out;
  while (!stack.empty()) {
    uint32_t n = stack.back();
    stack.pop_back();
    if (n <= 1 || seen[n]) continue;
    seen[n] = true;
    out.insert(Variable{level_var_[nodes_[n].level]});
    stack.push_back(nodes_[n].lo);
    stack.push_back(nodes_[n].hi);
  }
  return out;
}

BoolFn BddManager::widen_if_needed(BoolFn f) {
  // One variable per exceedance: gradual degradation instead of collapse
  // (the node table is never garbage collected).
  if (nodes_.size() <= node_budget_) return f;
  VarSet sup = support(f);
  if (sup.empty()) return f;
  Variable lru = sup[0];
  for (Variable v : sup)
    if (last_use_[level_of(v)] < last_use_[level_of(lru)]) lru = v;
  widened_ = true;
  return exists(f, lru);
}

std::string BddManager::sop_string(BoolFn f, const VarTable& vt) const {
  if (f.node() == 0) return "false";
  if (f.node() == 1) return "true";
  std::vector<std::string> products;
  std::vector<std::pair<uint32_t, bool>> path;
  auto walk = [&](auto&& self, uint32_t n) -> void {
    if (n == 0) return;
    if (n == 1) {
      std::ostringstream os;
      for (size_t i = 0; i < path.size(); ++i) {
        if (i) os << " & ";
        if (!path[i].second) os << '~';
        os << vt.name(Variable{level_var_[path[i].first]});
      }
      products.push_back(path.empty() ? "true" : os.str());
      return;
    }
    path.emplace_back(nodes_[n].level, false);
    self(self, nodes_[n].lo);
    path.back().second = true;
    self(self, nodes_[n].hi);
    path.pop_back();
  };
  walk(walk, f.node());
  std::ostringstream os;
  for (size_t i = 0; i < products.size(); ++i) {
    if (i) os << " | ";
    os << products[i];
  }
  return os.str();
}

std::string BddManager::truth_table_string(BoolFn f, const VarTable& vt) const {
  std::ostringstream os;
  size_t k = level_var_.size();
  os << "vars:";
  for (uint32_t id : level_var_) os << ' ' << vt.name(Variable{id});
  os << " table:";
  for (size_t bits = 0; bits < (size_t{1} << k); ++bits) {
    VarSet tv;
    for (size_t i = 0; i < k; ++i)
      if (bits & (size_t{1} << i)) tv.insert(Variable{level_var_[i]});
    os << (eval(f, tv) ? '1' : '0');
  }
  return os.str();
}

BoolFn transfer(BoolFn f, BddManager& target,
                const std::map<Variable, Variable>& rename) {
  BddManager* src = f.manager();
  std::map<uint32_t, BoolFn> memo;
  auto walk = [&](auto&& self, uint32_t n) -> BoolFn {
    if (n == 0) return target.bot();
    if (n == 1) return target.top();
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    // Peek at the source node through eval-free structural access:
    // rebuild as ite(var, hi, lo).
    Variable v = src->support_var_of(n);
    BoolFn lo = self(self, src->lo_of(n));
    BoolFn hi = self(self, src->hi_of(n));
    auto rit = rename.find(v);
    Variable tv = rit != rename.end() ? rit->second : v;
    BoolFn out = target.ite(target.var(tv), hi, lo);
    memo.emplace(n, out);
    return out;
  };
  return walk(walk, f.node());
}

}  // namespace fta
