#pragma once

#include <stdexcept>

#include "fta/ast.hpp"

namespace fta {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int col, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(col) + ": " + msg),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int column() const { return col_; }

 private:
  int line_;
  int col_;
};

// Prolog subset: clauses terminated by '.', bodies are ','-separated
// goals, '='/2 written infix, '%' comments to end of line. Atoms are
// lowercase or integers; variables start uppercase or with '_'; a bare
// '_' is anonymous (fresh per occurrence). Variables are clause-scoped.
Program parse_program(const std::string& text, TermArena& arena,
                      VarTable& vt);

// One goal over the given variable scope (used for entry goals).
Atom parse_goal_atom(const std::string& text, TermArena& arena, VarTable& vt,
                     const std::string& scope);

// A single term; variables are interned under the given scope.
TermId parse_term_text(const std::string& text, TermArena& arena,
                       VarTable& vt, const std::string& scope);

}  // namespace fta
