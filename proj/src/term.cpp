#include "fta/term.hpp"

#include <algorithm>
#include <sstream>

namespace fta {

int32_t TermArena::functor_symbol(const std::string& name, uint32_t rank) {
  auto key = std::make_pair(name, rank);
  auto it = functor_ids_.find(key);
  if (it != functor_ids_.end()) return it->second;
  int32_t sym = static_cast<int32_t>(functor_names_.size());
  functor_names_.push_back(name);
  functor_ranks_.push_back(rank);
  functor_ids_.emplace(key, sym);
  return sym;
}

TermId TermArena::var(Variable v) {
  auto it = var_terms_.find(v.id);
  if (it != var_terms_.end()) return it->second;
  TermId id = static_cast<TermId>(nodes_.size());
  Node n;
  n.functor = -1;
  n.var = v.id;
  n.vars.insert(v);
  nodes_.push_back(std::move(n));
  var_terms_.emplace(v.id, id);
  return id;
}

TermId TermArena::app(int32_t functor, const std::vector<TermId>& args) {
  auto key = std::make_pair(functor, args);
  auto it = app_terms_.find(key);
  if (it != app_terms_.end()) return it->second;
  TermId id = static_cast<TermId>(nodes_.size());
  Node n;
  n.functor = functor;
  n.var = 0;
  n.args = args;
  for (TermId a : args) {
    // A variable seen in two argument subtrees, or already nonlinear in
    // one of them, is nonlinear in the whole term.
    VarSet repeated = set_intersection(n.vars, nodes_[a].vars);
    n.nlvars.unite(repeated);
    n.nlvars.unite(nodes_[a].nlvars);
    n.vars.unite(nodes_[a].vars);
  }
  nodes_.push_back(std::move(n));
  app_terms_.emplace(key, id);
  return id;
}

std::map<Variable, size_t> TermArena::var_multiset(TermId t) const {
  std::map<Variable, size_t> counts;
  std::vector<TermId> stack{t};
  while (!stack.empty()) {
    TermId cur = stack.back();
    stack.pop_back();
    const Node& n = nodes_[cur];
    if (n.functor < 0) {
      counts[Variable{n.var}]++;
    } else {
      for (TermId a : n.args) stack.push_back(a);
    }
  }
  return counts;
}

size_t TermArena::term_size(TermId t) const {
  const Node& n = nodes_[t];
  if (n.functor < 0) return 1;
  size_t s = 1;
  for (TermId a : n.args) s += term_size(a);
  return s;
}

std::string TermArena::to_string(TermId t, const VarTable& vt) const {
  const Node& n = nodes_[t];
  if (n.functor < 0) return vt.name(Variable{n.var});
  std::ostringstream os;
  os << functor_names_[n.functor];
  if (!n.args.empty()) {
    os << '(';
    for (size_t i = 0; i < n.args.size(); ++i) {
      if (i) os << ',';
      os << to_string(n.args[i], vt);
    }
    os << ')';
  }
  return os.str();
}

}  // namespace fta
