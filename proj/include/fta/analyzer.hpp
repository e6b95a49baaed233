#pragma once

#include <functional>
#include <memory>
#include <set>

#include "fta/ast.hpp"
#include "fta/depdom.hpp"
#include "fta/hdomain.hpp"

namespace fta {

enum class DomainLevel { HP, HP_FD, HP_FD_GD };

struct AnalyzerOptions {
  DomainLevel domain = DomainLevel::HP_FD_GD;
  unsigned max_iterations = 100;
  bool dump_fixpoint = false;
  size_t node_budget = 1000000;
  // With strict mode on, calling a predicate that has no clauses and is
  // not a builtin is an error instead of a havoc.
  bool strict = false;
};

class AnalysisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Success pattern of one predicate over its canonical parameters x1..xk.
struct PredSummary {
  std::string name;
  uint32_t arity = 0;
  std::vector<Variable> params;
  VarSet param_set;
  VarSet h;
  SflState p;
  std::shared_ptr<BddManager> mgr;
  BoolFn fd;
  BoolFn gd;
  // Values right after the clause merge, before the summary reductions.
  VarSet h_pre;
  BoolFn gd_pre;
  std::vector<std::string> reductions_fired;
  // True until the first clause result lands (least element of the merge).
  bool unreached = true;
};

struct AnalysisResult {
  std::map<std::pair<std::string, uint32_t>, PredSummary> summaries;
  std::vector<std::string> warnings;
  std::vector<std::string> fixpoint_trace;
};

// Abstract execution state over one evaluation universe.
struct EvalState {
  VarSet vi;
  VarSet h;
  SflState p;
  BoolFn fd;
  BoolFn gd;
  bool unreachable = false;
};

// Result of abstractly running one goal against computed summaries.
struct EntryResult {
  Atom goal;
  std::vector<Variable> goal_vars;
  std::shared_ptr<BddManager> mgr;
  EvalState state;
};

class Analyzer {
 public:
  // The effect of a builtin on the current state. Registered effects may
  // be replaced (tests register synthetic builtins).
  using BuiltinFn =
      std::function<void(Analyzer&, EvalState&, BddManager&, const Atom&)>;

  Analyzer(TermArena& arena, VarTable& vt, Program program,
           AnalyzerOptions options = {});

  AnalysisResult analyze();

  // Abstract execution of one query against success patterns, starting
  // from a state where the query variables are distinct free variables.
  EntryResult specialize_entry(const AnalysisResult& result, const Atom& goal);
  EntryResult specialize_entry(const AnalysisResult& result,
                               const std::string& name, uint32_t arity);

  void register_builtin(const std::string& name, uint32_t arity, BuiltinFn fn);
  bool is_builtin(const std::string& name, uint32_t arity) const;

  // State transformers, shared by clause evaluation and builtins.
  void apply_binding(EvalState& st, BddManager& mgr, Variable x, TermId t);
  void eval_unify(EvalState& st, BddManager& mgr, TermId s, TermId t);
  void make_unreachable(EvalState& st, BddManager& mgr);
  void inject_finiteness(EvalState& st, BddManager& mgr, const VarSet& vars,
                         std::set<std::string>* fired);
  void havoc(EvalState& st, BddManager& mgr, const VarSet& touched);
  void project_var(EvalState& st, BddManager& mgr, Variable v);

  TermArena& arena() { return arena_; }
  VarTable& vars() { return vt_; }
  const AnalyzerOptions& options() const { return options_; }
  DomainLevel level() const { return options_.domain; }

  Variable canonical_param(size_t i);

 private:
  struct ClausePlan {
    std::vector<Variable> params;
    std::vector<std::vector<Variable>> call_renames;  // per body goal
    VarSet universe;
  };

  struct ClauseOutcome {
    VarSet h;
    SflState p;
    BoolFn fd;
    BoolFn gd;
    std::shared_ptr<BddManager> mgr;
    bool unreachable;
  };

  ClausePlan& plan_for(size_t clause_idx, const Clause& clause);
  ClauseOutcome eval_clause(size_t clause_idx, const Clause& clause);
  void eval_goal(EvalState& st, BddManager& mgr, const Goal& goal,
                 const std::vector<Variable>& renames);
  void eval_call(EvalState& st, BddManager& mgr, const Atom& atom,
                 const std::vector<Variable>& renames);
  void conjoin_summary(EvalState& st, BddManager& mgr, const PredSummary& s,
                       const std::vector<Variable>& renames);

  PredSummary bottom_summary(const std::string& name, uint32_t arity);
  PredSummary top_summary(const std::string& name, uint32_t arity);
  PredSummary outcome_to_summary(const std::string& name, uint32_t arity,
                                 const ClausePlan& plan,
                                 const ClauseOutcome& out);
  PredSummary merge_summaries(const PredSummary& a, const PredSummary& b);
  void reduce_summary(PredSummary& s);
  bool summaries_equal(const PredSummary& a, const PredSummary& b);

  std::vector<std::vector<std::pair<std::string, uint32_t>>> call_graph_sccs();

  TermArena& arena_;
  VarTable& vt_;
  Program program_;
  AnalyzerOptions options_;
  std::map<std::pair<std::string, uint32_t>, BuiltinFn> builtins_;
  std::map<size_t, ClausePlan> plans_;
  std::map<std::pair<std::string, uint32_t>, PredSummary> summaries_;
  std::vector<std::string> warnings_;
  std::vector<std::string> trace_;
  std::set<std::string> warned_unknown_;
  std::set<std::string> current_fired_;
};

}  // namespace fta
