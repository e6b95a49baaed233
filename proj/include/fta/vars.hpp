#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <unordered_map>
#include <vector>

namespace fta {

// A program variable. Variables are interned in a VarTable; equality and
// ordering are by interned id.
struct Variable {
  uint32_t id = 0;

  friend bool operator==(Variable a, Variable b) { return a.id == b.id; }
  friend auto operator<=>(Variable a, Variable b) { return a.id <=> b.id; }
};

// Interning table mapping printable names to variable ids. One table per
// analysis; not synchronized.
class VarTable {
 public:
  Variable intern(const std::string& name) {
    auto it = by_name_.find(name);
    if (it != by_name_.end()) return Variable{it->second};
    uint32_t id = static_cast<uint32_t>(names_.size());
    names_.push_back(name);
    by_name_.emplace(name, id);
    return Variable{id};
  }

  // A variable guaranteed distinct from every interned one so far.
  Variable fresh(const std::string& hint = "_G") {
    std::string name = hint + std::to_string(names_.size());
    while (by_name_.count(name)) name += "'";
    return intern(name);
  }

  const std::string& name(Variable v) const { return names_.at(v.id); }
  size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, uint32_t> by_name_;
};

// Finite set of variables, kept as a sorted vector of ids. Deterministic
// iteration order, cheap at the sizes this analysis works with.
class VarSet {
 public:
  VarSet() = default;
  VarSet(std::initializer_list<Variable> vs) {
    for (Variable v : vs) insert(v);
  }

  bool contains(Variable v) const {
    return std::binary_search(ids_.begin(), ids_.end(), v.id);
  }

  void insert(Variable v) {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), v.id);
    if (it == ids_.end() || *it != v.id) ids_.insert(it, v.id);
  }

  void erase(Variable v) {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), v.id);
    if (it != ids_.end() && *it == v.id) ids_.erase(it);
  }

  VarSet& unite(const VarSet& o) {
    std::vector<uint32_t> out;
    out.reserve(ids_.size() + o.ids_.size());
    std::set_union(ids_.begin(), ids_.end(), o.ids_.begin(), o.ids_.end(),
                   std::back_inserter(out));
    ids_ = std::move(out);
    return *this;
  }

  VarSet& intersect(const VarSet& o) {
    std::vector<uint32_t> out;
    std::set_intersection(ids_.begin(), ids_.end(), o.ids_.begin(),
                          o.ids_.end(), std::back_inserter(out));
    ids_ = std::move(out);
    return *this;
  }

  VarSet& subtract(const VarSet& o) {
    std::vector<uint32_t> out;
    std::set_difference(ids_.begin(), ids_.end(), o.ids_.begin(), o.ids_.end(),
                        std::back_inserter(out));
    ids_ = std::move(out);
    return *this;
  }

  bool subset_of(const VarSet& o) const {
    return std::includes(o.ids_.begin(), o.ids_.end(), ids_.begin(),
                         ids_.end());
  }

  bool disjoint(const VarSet& o) const {
    auto a = ids_.begin();
    auto b = o.ids_.begin();
    while (a != ids_.end() && b != o.ids_.end()) {
      if (*a < *b)
        ++a;
      else if (*b < *a)
        ++b;
      else
        return false;
    }
    return true;
  }

  bool empty() const { return ids_.empty(); }
  size_t size() const { return ids_.size(); }
  void clear() { ids_.clear(); }

  Variable operator[](size_t i) const { return Variable{ids_[i]}; }

  struct iterator {
    std::vector<uint32_t>::const_iterator it;
    Variable operator*() const { return Variable{*it}; }
    iterator& operator++() {
      ++it;
      return *this;
    }
    bool operator!=(const iterator& o) const { return it != o.it; }
  };
  iterator begin() const { return {ids_.begin()}; }
  iterator end() const { return {ids_.end()}; }

  friend bool operator==(const VarSet&, const VarSet&) = default;
  friend auto operator<=>(const VarSet&, const VarSet&) = default;

  friend VarSet set_union(VarSet a, const VarSet& b) { return a.unite(b); }
  friend VarSet set_intersection(VarSet a, const VarSet& b) {
    return a.intersect(b);
  }
  friend VarSet set_difference(VarSet a, const VarSet& b) {
    return a.subtract(b);
  }

  const std::vector<uint32_t>& raw() const { return ids_; }

 private:
  std::vector<uint32_t> ids_;
};

}  // namespace fta

template <>
struct std::hash<fta::Variable> {
  size_t operator()(fta::Variable v) const { return v.id; }
};
