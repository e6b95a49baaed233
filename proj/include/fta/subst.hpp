#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "fta/term.hpp"

namespace fta {

enum class SubstErrorKind {
  DuplicateDomainVar,
  IdentityBinding,
  CircularVariableChain,
};

class SubstError : public std::runtime_error {
 public:
  SubstError(SubstErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  SubstErrorKind kind() const { return kind_; }

 private:
  SubstErrorKind kind_;
};

// A substitution in rational solved form: a finite set of bindings x -> t
// with pairwise distinct left-hand sides, no identities and no circular
// subset made of variable-to-variable bindings.
class Subst {
 public:
  Subst() = default;

  // Validates the three invariants; throws SubstError otherwise.
  static Subst make(const TermArena& arena,
                    const std::vector<std::pair<Variable, TermId>>& bindings);

  bool binds(Variable x) const { return bindings_.count(x) != 0; }
  TermId image(Variable x) const { return bindings_.at(x); }
  size_t size() const { return bindings_.size(); }
  bool empty() const { return bindings_.empty(); }

  VarSet domain() const;
  // All variables occurring in the bindings (domain and images).
  VarSet all_vars(const TermArena& arena) const;

  const std::map<Variable, TermId>& bindings() const { return bindings_; }

  friend bool operator==(const Subst&, const Subst&) = default;

  std::string to_string(const TermArena& arena, const VarTable& vt) const;

 private:
  std::map<Variable, TermId> bindings_;
};

// Single simultaneous application of the substitution: every occurrence of
// a domain variable is replaced by its image exactly once.
TermId apply(TermArena& arena, const Subst& s, TermId t);

// t with every occurrence of x replaced by r.
TermId replace_var(TermArena& arena, TermId t, Variable x, TermId r);

// vars(t) after i applications of s.
VarSet vars_after(TermArena& arena, const Subst& s, TermId t, unsigned i);

// True if for every domain variable y, vars(y*s*s) = vars(y*s). Extends to
// all terms by structural induction.
bool is_variable_idempotent(TermArena& arena, const Subst& s);

// Rewrites s, by steps that substitute one binding into another, into an
// equivalent substitution that is strongly variable-idempotent (and whose
// subsets all are). Domain and the overall variable set are preserved.
Subst s_normalize(TermArena& arena, const Subst& s);

}  // namespace fta
