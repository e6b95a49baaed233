#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "fta/vars.hpp"

namespace fta {

class BddManager;

// A Boolean function over the manager's variable universe, held as a
// reduced ordered decision diagram node. Functions from the same manager
// are canonical: semantic equality is node equality.
class BoolFn {
 public:
  BoolFn() = default;

  BoolFn operator&&(BoolFn o) const;
  BoolFn operator||(BoolFn o) const;
  BoolFn operator!() const;
  BoolFn iff(BoolFn o) const;
  BoolFn implies(BoolFn o) const;

  bool is_bot() const { return node_ == 0; }
  bool is_top() const { return node_ == 1; }

  friend bool operator==(BoolFn a, BoolFn b) {
    return a.mgr_ == b.mgr_ && a.node_ == b.node_;
  }

  BddManager* manager() const { return mgr_; }
  uint32_t node() const { return node_; }

 private:
  friend class BddManager;
  BoolFn(BddManager* m, uint32_t n) : mgr_(m), node_(n) {}
  BddManager* mgr_ = nullptr;
  uint32_t node_ = 0;
};

class UnknownVariable : public std::out_of_range {
 public:
  explicit UnknownVariable(const std::string& what)
      : std::out_of_range(what) {}
};

// Owns the node and operation tables for one variable universe. Values
// built by one manager must stay with it; use transfer() to move a
// function into another manager. Not synchronized: one manager per
// analysis (or external serialization).
class BddManager {
 public:
  explicit BddManager(VarSet universe, size_t node_budget = 1000000);

  const VarSet& universe() const { return universe_; }

  BoolFn bot() { return BoolFn(this, 0); }
  BoolFn top() { return BoolFn(this, 1); }
  BoolFn var(Variable x);
  BoolFn conj(const VarSet& xs);

  BoolFn ite(BoolFn f, BoolFn g, BoolFn h);
  BoolFn restrict_to(BoolFn f, Variable x, bool value);
  // f with x replaced by y (cofactor selection on y).
  BoolFn rename(BoolFn f, Variable x, Variable y);
  BoolFn exists(BoolFn f, Variable x);
  BoolFn exists(BoolFn f, const VarSet& xs);

  bool entails(BoolFn f, BoolFn g);
  bool eval(BoolFn f, const VarSet& true_vars) const;

  // True under the everything-is-true assignment.
  bool is_pos(BoolFn f) const;
  // Weakest strengthening into the positive fragment: f or conj(universe).
  BoolFn pos_part(BoolFn f);

  // Variables entailed true (resp. false) by f. Both equal the whole
  // universe when f is unsatisfiable.
  VarSet true_set(BoolFn f);
  VarSet false_set(BoolFn f);

  VarSet support(BoolFn f) const;

  size_t node_count() const { return nodes_.size(); }
  bool widened() const { return widened_; }

  // Structural access for rebuilding values in another manager.
  Variable support_var_of(uint32_t node) const {
    return Variable{level_var_[nodes_[node].level]};
  }
  uint32_t lo_of(uint32_t node) const { return nodes_[node].lo; }
  uint32_t hi_of(uint32_t node) const { return nodes_[node].hi; }

  // Soft complexity guard: while over budget, existentially drops the
  // least recently used support variable. Applied by the analyzer after
  // formula updates; a no-op when under budget.
  BoolFn widen_if_needed(BoolFn f);

  std::string sop_string(BoolFn f, const VarTable& vt) const;
  std::string truth_table_string(BoolFn f, const VarTable& vt) const;

 private:
  struct Node {
    uint32_t level;
    uint32_t lo;
    uint32_t hi;
  };
  struct NodeKeyHash {
    size_t operator()(const std::array<uint32_t, 3>& k) const {
      size_t h = k[0];
      h = h * 1000003u + k[1];
      h = h * 1000003u + k[2];
      return h;
    }
  };

  uint32_t level_of(Variable x) const;
  void touch(uint32_t level) { last_use_[level] = ++use_stamp_; }
  uint32_t mk(uint32_t level, uint32_t lo, uint32_t hi);
  uint32_t ite_rec(uint32_t f, uint32_t g, uint32_t h);
  uint32_t restrict_rec(uint32_t f, uint32_t level, bool value);
  uint32_t exists_rec(uint32_t f, uint32_t level);

  VarSet universe_;
  std::vector<uint32_t> level_var_;            // level -> variable id
  std::unordered_map<uint32_t, uint32_t> var_level_;
  std::vector<Node> nodes_;
  std::unordered_map<std::array<uint32_t, 3>, uint32_t, NodeKeyHash> unique_;
  std::unordered_map<std::array<uint32_t, 3>, uint32_t, NodeKeyHash> ite_cache_;
  std::map<std::tuple<uint32_t, uint32_t, int>, uint32_t> unary_cache_;
  std::vector<uint64_t> last_use_;
  uint64_t use_stamp_ = 0;
  size_t node_budget_;
  bool widened_ = false;
};

// Rebuilds f inside another manager, optionally renaming variables.
BoolFn transfer(BoolFn f, BddManager& target,
                const std::map<Variable, Variable>& rename = {});

}  // namespace fta
