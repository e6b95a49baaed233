#pragma once

#include <cstdint>

#include "fta/boolfun.hpp"

namespace fta::test {

// Truth-table backend over at most 6 variables: the independent oracle the
// decision-diagram implementation is checked against. Bit i of `bits`
// holds the value under the assignment whose j-th variable (in universe
// order) is true iff bit j of i is set.
class TtFn {
 public:
  TtFn() = default;
  TtFn(const VarSet& universe, uint64_t bits)
      : universe_(universe), bits_(bits & mask()) {}

  static TtFn bot(const VarSet& u) { return TtFn(u, 0); }
  static TtFn top(const VarSet& u) { return TtFn(u, ~uint64_t{0}); }
  static TtFn var(const VarSet& u, Variable x) {
    TtFn out(u, 0);
    size_t level = out.level_of(x);
    for (uint64_t a = 0; a < out.count(); ++a)
      if (a & (uint64_t{1} << level)) out.bits_ |= uint64_t{1} << a;
    return out;
  }

  TtFn operator&&(const TtFn& o) const { return TtFn(universe_, bits_ & o.bits_); }
  TtFn operator||(const TtFn& o) const { return TtFn(universe_, bits_ | o.bits_); }
  TtFn operator!() const { return TtFn(universe_, ~bits_); }
  TtFn iff(const TtFn& o) const { return TtFn(universe_, ~(bits_ ^ o.bits_)); }

  TtFn restrict_to(Variable x, bool value) const {
    size_t level = level_of(x);
    TtFn out(universe_, 0);
    for (uint64_t a = 0; a < count(); ++a) {
      uint64_t b = value ? (a | (uint64_t{1} << level))
                         : (a & ~(uint64_t{1} << level));
      if (bits_ & (uint64_t{1} << b)) out.bits_ |= uint64_t{1} << a;
    }
    return out;
  }

  TtFn rename(Variable x, Variable y) const {
    // value at a is value at a[a(y)/x]
    size_t lx = level_of(x);
    size_t ly = level_of(y);
    TtFn out(universe_, 0);
    for (uint64_t a = 0; a < count(); ++a) {
      bool yv = a & (uint64_t{1} << ly);
      uint64_t b = yv ? (a | (uint64_t{1} << lx)) : (a & ~(uint64_t{1} << lx));
      if (bits_ & (uint64_t{1} << b)) out.bits_ |= uint64_t{1} << a;
    }
    return out;
  }

  TtFn exists(Variable x) const {
    return restrict_to(x, false) || restrict_to(x, true);
  }

  bool entails(const TtFn& o) const { return (bits_ & ~o.bits_) == 0; }
  bool is_pos() const { return (bits_ >> (count() - 1)) & 1; }
  TtFn pos_part() const {
    TtFn all = top(universe_);
    for (Variable v : universe_) all = all && var(universe_, v);
    return *this || all;
  }
  VarSet true_set() const {
    VarSet out;
    for (Variable x : universe_)
      if (entails(var(universe_, x))) out.insert(x);
    return out;
  }
  VarSet false_set() const {
    VarSet out;
    for (Variable x : universe_)
      if (entails(!var(universe_, x))) out.insert(x);
    return out;
  }

  bool eval(const VarSet& true_vars) const {
    uint64_t a = 0;
    size_t i = 0;
    for (Variable v : universe_) {
      if (true_vars.contains(v)) a |= uint64_t{1} << i;
      ++i;
    }
    return (bits_ >> a) & 1;
  }

  uint64_t bits() const { return bits_; }
  friend bool operator==(const TtFn& a, const TtFn& b) {
    return a.bits_ == b.bits_;
  }

 private:
  size_t level_of(Variable x) const {
    size_t i = 0;
    for (Variable v : universe_) {
      if (v == x) return i;
      ++i;
    }
    throw UnknownVariable("TtFn: unknown variable");
  }
  uint64_t count() const { return uint64_t{1} << universe_.size(); }
  uint64_t mask() const {
    return count() >= 64 ? ~uint64_t{0} : (uint64_t{1} << count()) - 1;
  }

  VarSet universe_;
  uint64_t bits_ = 0;
};

// Checks a BoolFn and a TtFn agree on every assignment.
inline bool agree(BddManager& m, BoolFn f, const TtFn& t) {
  const VarSet& u = m.universe();
  std::vector<Variable> vars;
  for (Variable v : u) vars.push_back(v);
  for (uint64_t a = 0; a < (uint64_t{1} << vars.size()); ++a) {
    VarSet tv;
    for (size_t i = 0; i < vars.size(); ++i)
      if (a & (uint64_t{1} << i)) tv.insert(vars[i]);
    if (m.eval(f, tv) != t.eval(tv)) return false;
  }
  return true;
}

}  // namespace fta::test
