#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fta/vars.hpp"

namespace fta {

// Index of a term node in its arena.
using TermId = uint32_t;

// Finite terms over a ranked signature. Nodes are immutable and
// hash-consed, so structural equality is id equality and the variable set
// of a node is computed once at construction.
class TermArena {
 public:
  // Functor symbols are identified by (name, rank).
  int32_t functor_symbol(const std::string& name, uint32_t rank);
  const std::string& functor_name(int32_t sym) const {
    return functor_names_.at(sym);
  }
  uint32_t functor_rank(int32_t sym) const { return functor_ranks_.at(sym); }

  TermId var(Variable v);
  TermId app(int32_t functor, const std::vector<TermId>& args);
  TermId app(const std::string& name, const std::vector<TermId>& args) {
    return app(functor_symbol(name, static_cast<uint32_t>(args.size())), args);
  }
  TermId constant(const std::string& name) { return app(name, {}); }

  bool is_var(TermId t) const { return nodes_[t].functor < 0; }
  Variable var_of(TermId t) const { return Variable{nodes_[t].var}; }
  int32_t functor_of(TermId t) const { return nodes_[t].functor; }
  const std::vector<TermId>& args_of(TermId t) const {
    return nodes_[t].args;
  }

  // Set of variables occurring in t.
  const VarSet& vars(TermId t) const { return nodes_[t].vars; }
  // Variables occurring more than once in t.
  const VarSet& nonlinear_vars(TermId t) const { return nodes_[t].nlvars; }
  bool is_ground(TermId t) const { return nodes_[t].vars.empty(); }
  bool is_linear(TermId t) const { return nodes_[t].nlvars.empty(); }
  // y occurs exactly once in t.
  bool occurs_linearly(Variable y, TermId t) const {
    return nodes_[t].vars.contains(y) && !nodes_[t].nlvars.contains(y);
  }

  // Occurrence counts per variable.
  std::map<Variable, size_t> var_multiset(TermId t) const;

  // Number of nodes: 1 for a variable, 1 + sum over arguments otherwise.
  size_t term_size(TermId t) const;

  std::string to_string(TermId t, const VarTable& vt) const;

  size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    int32_t functor;  // -1 for variables
    uint32_t var;
    std::vector<TermId> args;
    VarSet vars;
    VarSet nlvars;
  };

  struct KeyHash {
    size_t operator()(const std::pair<int32_t, std::vector<TermId>>& k) const {
      size_t h = std::hash<int32_t>()(k.first);
      for (TermId a : k.second) h = h * 1000003u + a;
      return h;
    }
  };

  std::vector<Node> nodes_;
  std::unordered_map<uint32_t, TermId> var_terms_;
  std::unordered_map<std::pair<int32_t, std::vector<TermId>>, TermId, KeyHash>
      app_terms_;
  std::vector<std::string> functor_names_;
  std::vector<uint32_t> functor_ranks_;
  std::map<std::pair<std::string, uint32_t>, int32_t> functor_ids_;
};

}  // namespace fta
