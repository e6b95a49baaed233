#pragma once

#include <map>
#include <string>
#include <vector>

#include "fta/term.hpp"

namespace fta {

struct Atom {
  std::string pred;
  std::vector<TermId> args;

  uint32_t arity() const { return static_cast<uint32_t>(args.size()); }
  std::string indicator() const {
    return pred + "/" + std::to_string(args.size());
  }
};

struct Goal {
  enum class Kind { Unify, Call };
  Kind kind;
  TermId lhs = 0;  // Unify
  TermId rhs = 0;
  Atom atom;       // Call
};

struct Clause {
  Atom head;
  std::vector<Goal> body;
  // All clause variables, in first-occurrence order.
  std::vector<Variable> vars;
};

struct Program {
  std::vector<Clause> clauses;
  // (name, arity) -> clause indices, in source order.
  std::map<std::pair<std::string, uint32_t>, std::vector<size_t>> index;
};

}  // namespace fta
