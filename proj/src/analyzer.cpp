#include "fta/analyzer.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <sstream>

namespace fta {

namespace {

std::string set_names(const VarSet& s, const VarTable& vt) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (Variable v : s) {
    if (!first) os << ',';
    first = false;
    os << vt.name(v);
  }
  os << '}';
  return os.str();
}

}  // namespace

Analyzer::Analyzer(TermArena& arena, VarTable& vt, Program program,
                   AnalyzerOptions options)
    : arena_(arena), vt_(vt), program_(std::move(program)), options_(options) {
  register_builtin("true", 0,
                   [](Analyzer&, EvalState&, BddManager&, const Atom&) {});
  register_builtin("fail", 0,
                   [](Analyzer& a, EvalState& st, BddManager& m, const Atom&) {
                     a.make_unreachable(st, m);
                   });
  register_builtin(
      "acyclic_term", 1,
      [](Analyzer& a, EvalState& st, BddManager& m, const Atom& g) {
        a.inject_finiteness(st, m, a.arena().vars(g.args[0]), nullptr);
      });
  register_builtin(
      "unify_with_occurs_check", 2,
      [](Analyzer& a, EvalState& st, BddManager& m, const Atom& g) {
        a.eval_unify(st, m, g.args[0], g.args[1]);
        VarSet vs = a.arena().vars(g.args[0]);
        vs.unite(a.arena().vars(g.args[1]));
        a.inject_finiteness(st, m, vs, nullptr);
      });
  register_builtin(
      "var", 1, [](Analyzer& a, EvalState& st, BddManager& m, const Atom& g) {
        if (!a.arena().is_var(g.args[0])) {
          a.make_unreachable(st, m);
          return;
        }
        Variable v = a.arena().var_of(g.args[0]);
        st.h.insert(v);
        VarSet f = st.p.free();
        f.insert(v);
        VarSet l = st.p.lin();
        l.insert(v);
        if (!st.p.is_bottom())
          st.p = SflState::make(st.p.vi(), st.p.sh(), std::move(f),
                                std::move(l));
      });
}

void Analyzer::register_builtin(const std::string& name, uint32_t arity,
                                BuiltinFn fn) {
  builtins_[{name, arity}] = std::move(fn);
}

bool Analyzer::is_builtin(const std::string& name, uint32_t arity) const {
  return builtins_.count({name, arity}) != 0;
}

Variable Analyzer::canonical_param(size_t i) {
  return vt_.intern("x" + std::to_string(i + 1));
}

void Analyzer::make_unreachable(EvalState& st, BddManager& mgr) {
  st.h = st.vi;
  st.p = SflState::bottom(st.vi);
  st.fd = mgr.bot();
  st.gd = mgr.conj(st.vi);
  st.unreachable = true;
}

void Analyzer::apply_binding(EvalState& st, BddManager& mgr, Variable x,
                             TermId t) {
  if (st.unreachable) return;
  if (arena_.is_var(t) && arena_.var_of(t) == x) return;
  st.h = amgu_h(arena_, st.h, st.p, x, t);
  st.p = sfl_amgu(arena_, st.p, x, t);
  if (options_.domain != DomainLevel::HP) {
    st.fd = mgr.widen_if_needed(amgu_fd(arena_, st.fd, x, t));
    if (options_.domain == DomainLevel::HP_FD_GD)
      st.gd = mgr.widen_if_needed(amgu_gd(arena_, st.gd, x, t));
  }
}

void Analyzer::eval_unify(EvalState& st, BddManager& mgr, TermId s, TermId t) {
  if (st.unreachable) return;
  // Structural decomposition into elementary bindings, left to right.
  std::vector<std::pair<Variable, TermId>> bindings;
  std::deque<std::pair<TermId, TermId>> work{{s, t}};
  while (!work.empty()) {
    auto [a, b] = work.front();
    work.pop_front();
    if (a == b) continue;
    if (arena_.is_var(a)) {
      bindings.emplace_back(arena_.var_of(a), b);
    } else if (arena_.is_var(b)) {
      bindings.emplace_back(arena_.var_of(b), a);
    } else if (arena_.functor_of(a) != arena_.functor_of(b)) {
      make_unreachable(st, mgr);
      return;
    } else {
      const auto& xs = arena_.args_of(a);
      const auto& ys = arena_.args_of(b);
      for (size_t i = 0; i < xs.size(); ++i) work.emplace_back(xs[i], ys[i]);
    }
  }
  for (const auto& [x, u] : bindings) apply_binding(st, mgr, x, u);
}

void Analyzer::inject_finiteness(EvalState& st, BddManager& mgr,
                                 const VarSet& vars,
                                 std::set<std::string>* fired) {
  (void)mgr;
  if (st.unreachable) return;
  st.h.unite(vars);
  if (options_.domain == DomainLevel::HP) return;
  if (fired == nullptr) fired = &current_fired_;
  VarSet h2 = reduce_h_from_fd(st.h, st.fd);
  if (!(h2 == st.h)) {
    fired->insert("h_from_fd");
    st.h = std::move(h2);
  }
  if (options_.domain == DomainLevel::HP_FD_GD) {
    BoolFn gd2 = reduce_gd_from_fd(st.h, st.fd, st.gd);
    if (!(gd2 == st.gd)) {
      fired->insert("gd_from_fd");
      st.gd = gd2;
    }
    BoolFn fd2 = reduce_fd_from_gd(st.h, st.fd, st.gd);
    if (!(fd2 == st.fd)) {
      fired->insert("fd_from_gd");
      st.fd = fd2;
    }
  }
}

void Analyzer::havoc(EvalState& st, BddManager& mgr, const VarSet& touched) {
  if (st.unreachable || st.p.is_bottom()) return;
  SharingSet relevant = sh_rel(touched, st.p.sh());
  VarSet affected = sharing_vars(relevant);
  SharingSet sh = sh_irrel(touched, st.p.sh());
  for (const VarSet& g : sh_star(relevant)) sh.insert(g);
  st.h.subtract(affected);
  st.p = SflState::make(st.p.vi(), std::move(sh),
                        set_difference(st.p.free(), affected),
                        set_difference(st.p.lin(), affected));
  if (options_.domain != DomainLevel::HP) {
    st.fd = mgr.exists(st.fd, affected);
    if (options_.domain == DomainLevel::HP_FD_GD)
      st.gd = mgr.exists(st.gd, affected);
  }
}

void Analyzer::project_var(EvalState& st, BddManager& mgr, Variable v) {
  (void)mgr;
  st.h.insert(v);
  st.p = sfl_proj(arena_, st.p, v);
  if (options_.domain != DomainLevel::HP) {
    st.fd = fd_project(st.fd, v);
    if (options_.domain == DomainLevel::HP_FD_GD)
      st.gd = gd_project(st.gd, v);
  }
}

void Analyzer::conjoin_summary(EvalState& st, BddManager& mgr,
                               const PredSummary& s,
                               const std::vector<Variable>& renames) {
  if (s.unreached || s.p.is_bottom()) {
    make_unreachable(st, mgr);
    return;
  }
  std::map<Variable, Variable> map;
  VarSet rename_set;
  for (size_t i = 0; i < renames.size(); ++i) {
    map[s.params[i]] = renames[i];
    rename_set.insert(renames[i]);
  }
  auto rename = [&](const VarSet& in) {
    VarSet out;
    for (Variable v : in) out.insert(map.at(v));
    return out;
  };
  // The renamed parameters are untouched so far: their description is
  // exactly the callee summary. Replace their placeholder singletons.
  SharingSet sh;
  for (const VarSet& g : st.p.sh()) {
    if (g.size() == 1 && rename_set.contains(g[0])) continue;
    sh.insert(g);
  }
  for (const VarSet& g : s.p.sh()) sh.insert(rename(g));
  VarSet f = set_difference(st.p.free(), rename_set);
  f.unite(rename(s.p.free()));
  VarSet l = set_difference(st.p.lin(), rename_set);
  l.unite(rename(s.p.lin()));
  st.p = SflState::make(st.p.vi(), std::move(sh), std::move(f), std::move(l));
  st.h.subtract(rename_set);
  st.h.unite(rename(s.h));
  if (options_.domain != DomainLevel::HP) {
    st.fd = mgr.widen_if_needed(st.fd && transfer(s.fd, mgr, map));
    if (options_.domain == DomainLevel::HP_FD_GD)
      st.gd = mgr.widen_if_needed(st.gd && transfer(s.gd, mgr, map));
  }
}

void Analyzer::eval_call(EvalState& st, BddManager& mgr, const Atom& atom,
                         const std::vector<Variable>& renames) {
  if (st.unreachable) return;
  auto bit = builtins_.find({atom.pred, atom.arity()});
  if (bit != builtins_.end()) {
    bit->second(*this, st, mgr, atom);
    return;
  }
  auto sit = summaries_.find({atom.pred, atom.arity()});
  if (sit == summaries_.end()) {
    if (program_.index.count({atom.pred, atom.arity()})) {
      // Defined in the program but not in the current summary table:
      // only possible for goals outside analyze(); treat as unreached.
      make_unreachable(st, mgr);
      return;
    }
    if (options_.strict)
      throw AnalysisError("unknown predicate " + atom.indicator());
    if (warned_unknown_.insert(atom.indicator()).second)
      warnings_.push_back("unknown predicate " + atom.indicator() +
                          ": treated as havoc");
    VarSet touched;
    for (TermId t : atom.args) touched.unite(arena_.vars(t));
    havoc(st, mgr, touched);
    return;
  }
  conjoin_summary(st, mgr, sit->second, renames);
  if (st.unreachable) return;
  for (size_t i = 0; i < atom.args.size(); ++i)
    eval_unify(st, mgr, atom.args[i], arena_.var(renames[i]));
  for (size_t i = renames.size(); i-- > 0;) project_var(st, mgr, renames[i]);
}

void Analyzer::eval_goal(EvalState& st, BddManager& mgr, const Goal& goal,
                         const std::vector<Variable>& renames) {
  if (goal.kind == Goal::Kind::Unify) {
    eval_unify(st, mgr, goal.lhs, goal.rhs);
  } else {
    eval_call(st, mgr, goal.atom, renames);
  }
}

Analyzer::ClausePlan& Analyzer::plan_for(size_t clause_idx,
                                         const Clause& clause) {
  auto it = plans_.find(clause_idx);
  if (it != plans_.end()) return it->second;
  ClausePlan plan;
  std::string tag = "c" + std::to_string(clause_idx);
  for (size_t i = 0; i < clause.head.args.size(); ++i)
    plan.params.push_back(vt_.intern("_p" + std::to_string(i + 1) + "@" + tag));
  for (size_t g = 0; g < clause.body.size(); ++g) {
    std::vector<Variable> renames;
    const Goal& goal = clause.body[g];
    if (goal.kind == Goal::Kind::Call &&
        !is_builtin(goal.atom.pred, goal.atom.arity())) {
      for (size_t i = 0; i < goal.atom.args.size(); ++i)
        renames.push_back(vt_.intern("_r" + std::to_string(g) + "_" +
                                     std::to_string(i + 1) + "@" + tag));
    }
    plan.call_renames.push_back(std::move(renames));
  }
  for (Variable v : clause.vars) plan.universe.insert(v);
  for (Variable v : plan.params) plan.universe.insert(v);
  for (const auto& rs : plan.call_renames)
    for (Variable v : rs) plan.universe.insert(v);
  return plans_.emplace(clause_idx, std::move(plan)).first->second;
}

Analyzer::ClauseOutcome Analyzer::eval_clause(size_t clause_idx,
                                              const Clause& clause) {
  ClausePlan& plan = plan_for(clause_idx, clause);
  auto mgr = std::make_shared<BddManager>(plan.universe, options_.node_budget);
  EvalState st;
  st.vi = plan.universe;
  // Clause variables and parameters start as distinct free variables, and
  // a free variable is a finite term.
  st.h = plan.universe;
  st.p = SflState::top(plan.universe);
  st.fd = mgr->top();
  st.gd = mgr->top();
  for (size_t g = 0; g < clause.body.size(); ++g)
    eval_goal(st, *mgr, clause.body[g], plan.call_renames[g]);
  for (size_t i = 0; i < plan.params.size(); ++i)
    eval_unify(st, *mgr, arena_.var(plan.params[i]), clause.head.args[i]);
  // Clause-local variables leave scope in reverse introduction order.
  for (size_t i = clause.vars.size(); i-- > 0;)
    project_var(st, *mgr, clause.vars[i]);
  return ClauseOutcome{st.h, st.p, st.fd, st.gd, mgr, st.unreachable};
}

PredSummary Analyzer::bottom_summary(const std::string& name, uint32_t arity) {
  PredSummary s;
  s.name = name;
  s.arity = arity;
  for (size_t i = 0; i < arity; ++i) s.params.push_back(canonical_param(i));
  for (Variable v : s.params) s.param_set.insert(v);
  s.mgr = std::make_shared<BddManager>(s.param_set, options_.node_budget);
  s.h = s.param_set;
  s.p = SflState::bottom(s.param_set);
  s.fd = s.mgr->bot();
  s.gd = s.mgr->conj(s.param_set);
  s.h_pre = s.h;
  s.gd_pre = s.gd;
  s.unreached = true;
  return s;
}

PredSummary Analyzer::top_summary(const std::string& name, uint32_t arity) {
  PredSummary s = bottom_summary(name, arity);
  s.h = VarSet{};
  s.p = SflState::top(s.param_set);
  s.fd = s.mgr->top();
  s.gd = s.mgr->top();
  s.h_pre = s.h;
  s.gd_pre = s.gd;
  s.unreached = false;
  return s;
}

PredSummary Analyzer::outcome_to_summary(const std::string& name,
                                         uint32_t arity,
                                         const ClausePlan& plan,
                                         const ClauseOutcome& out) {
  PredSummary s = bottom_summary(name, arity);
  if (out.unreachable || out.p.is_bottom()) return s;
  std::map<Variable, Variable> map;
  VarSet params;
  for (size_t i = 0; i < plan.params.size(); ++i) {
    map[plan.params[i]] = s.params[i];
    params.insert(plan.params[i]);
  }
  auto rename = [&](const VarSet& in) {
    VarSet r;
    for (Variable v : in)
      if (map.count(v)) r.insert(map.at(v));
    return r;
  };
  s.h = rename(set_intersection(out.h, params));
  SharingSet sh;
  for (const VarSet& g : out.p.sh())
    if (g.subset_of(params)) sh.insert(rename(g));
  s.p = SflState::make(s.param_set, std::move(sh),
                       rename(set_intersection(out.p.free(), params)),
                       rename(set_intersection(out.p.lin(), params)));
  s.fd = transfer(out.fd, *s.mgr, map);
  s.gd = transfer(out.gd, *s.mgr, map);
  s.h_pre = s.h;
  s.gd_pre = s.gd;
  s.unreached = false;
  return s;
}

PredSummary Analyzer::merge_summaries(const PredSummary& a,
                                      const PredSummary& b) {
  if (a.unreached) return b;
  if (b.unreached) return a;
  PredSummary s = bottom_summary(a.name, a.arity);
  s.h = set_intersection(a.h, b.h);
  s.p = sfl_merge(a.p, b.p);
  s.fd = fd_merge(transfer(a.fd, *s.mgr), transfer(b.fd, *s.mgr));
  s.gd = gd_merge(transfer(a.gd, *s.mgr), transfer(b.gd, *s.mgr));
  s.h_pre = s.h;
  s.gd_pre = s.gd;
  s.unreached = false;
  return s;
}

void Analyzer::reduce_summary(PredSummary& s) {
  if (s.unreached || options_.domain == DomainLevel::HP) return;
  s.h_pre = s.h;
  s.gd_pre = s.gd;
  if (s.fd.is_bot()) return;  // unreachable code: no reductions
  bool changed = true;
  while (changed) {
    changed = false;
    VarSet h2 = reduce_h_from_fd(s.h, s.fd);
    if (!(h2 == s.h)) {
      s.h = std::move(h2);
      s.reductions_fired.push_back("h_from_fd");
      changed = true;
    }
    if (options_.domain == DomainLevel::HP_FD_GD) {
      BoolFn gd2 = reduce_gd_from_fd(s.h, s.fd, s.gd);
      if (!(gd2 == s.gd)) {
        s.gd = gd2;
        s.reductions_fired.push_back("gd_from_fd");
        changed = true;
      }
      gd2 = reduce_gd_from_true(s.fd, s.gd);
      if (!(gd2 == s.gd)) {
        s.gd = gd2;
        s.reductions_fired.push_back("gd_from_true");
        changed = true;
      }
      BoolFn fd2 = reduce_fd_from_gd(s.h, s.fd, s.gd);
      if (!(fd2 == s.fd)) {
        s.fd = fd2;
        s.reductions_fired.push_back("fd_from_gd");
        changed = true;
      }
    }
  }
}

bool Analyzer::summaries_equal(const PredSummary& a, const PredSummary& b) {
  if (a.unreached != b.unreached) return false;
  if (!(a.h == b.h) || !(a.p == b.p)) return false;
  return transfer(a.fd, *b.mgr) == b.fd && transfer(a.gd, *b.mgr) == b.gd;
}

std::vector<std::vector<std::pair<std::string, uint32_t>>>
Analyzer::call_graph_sccs() {
  using Key = std::pair<std::string, uint32_t>;
  std::vector<Key> keys;
  for (const auto& [k, idxs] : program_.index) keys.push_back(k);
  std::map<Key, std::vector<Key>> edges;
  for (const auto& [k, idxs] : program_.index) {
    for (size_t idx : idxs) {
      for (const Goal& g : program_.clauses[idx].body) {
        if (g.kind != Goal::Kind::Call) continue;
        Key callee{g.atom.pred, g.atom.arity()};
        if (program_.index.count(callee)) edges[k].push_back(callee);
      }
    }
  }
  // Tarjan; components come out dependencies-first.
  std::map<Key, int> index, low;
  std::map<Key, bool> on_stack;
  std::vector<Key> stack;
  std::vector<std::vector<Key>> out;
  int next = 0;
  struct Frame {
    Key v;
    size_t i;
  };
  for (const Key& root : keys) {
    if (index.count(root)) continue;
    std::vector<Frame> frames;
    auto push_node = [&](const Key& v) {
      index[v] = low[v] = next++;
      stack.push_back(v);
      on_stack[v] = true;
      frames.push_back({v, 0});
    };
    push_node(root);
    while (!frames.empty()) {
      Frame& f = frames.back();
      auto& succ = edges[f.v];
      if (f.i < succ.size()) {
        Key w = succ[f.i++];
        if (!index.count(w)) {
          push_node(w);
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        if (low[f.v] == index[f.v]) {
          std::vector<Key> comp;
          while (true) {
            Key w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp.push_back(w);
            if (w == f.v) break;
          }
          std::sort(comp.begin(), comp.end());
          out.push_back(std::move(comp));
        }
        Key v = f.v;
        frames.pop_back();
        if (!frames.empty())
          low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      }
    }
  }
  return out;
}

AnalysisResult Analyzer::analyze() {
  summaries_.clear();
  warnings_.clear();
  trace_.clear();
  for (const auto& [key, idxs] : program_.index)
    summaries_[key] = bottom_summary(key.first, key.second);

  for (const auto& scc : call_graph_sccs()) {
    bool stable = false;
    unsigned iter = 0;
    for (; iter < options_.max_iterations && !stable; ++iter) {
      stable = true;
      for (const auto& key : scc) {
        current_fired_.clear();
        PredSummary merged = bottom_summary(key.first, key.second);
        for (size_t idx : program_.index.at(key)) {
          ClauseOutcome out = eval_clause(idx, program_.clauses[idx]);
          merged = merge_summaries(
              merged, outcome_to_summary(key.first, key.second,
                                         plans_.at(idx), out));
        }
        merged = merge_summaries(summaries_.at(key), merged);
        for (const std::string& r : current_fired_)
          merged.reductions_fired.push_back(r);
        reduce_summary(merged);
        if (!summaries_equal(summaries_.at(key), merged)) stable = false;
        if (options_.dump_fixpoint) {
          std::ostringstream os;
          os << key.first << '/' << key.second << " iter " << iter << ": h="
             << set_names(merged.h, vt_)
             << " fd=" << merged.mgr->sop_string(merged.fd, vt_)
             << " gd=" << merged.mgr->sop_string(merged.gd, vt_);
          trace_.push_back(os.str());
        }
        summaries_[key] = std::move(merged);
      }
    }
    if (!stable) {
      std::ostringstream os;
      os << "iteration cap exceeded (" << options_.max_iterations
         << ") for SCC:";
      for (const auto& key : scc) os << ' ' << key.first << '/' << key.second;
      os << "; widened to top";
      warnings_.push_back(os.str());
      for (const auto& key : scc)
        summaries_[key] = top_summary(key.first, key.second);
    }
  }

  AnalysisResult result;
  result.summaries = summaries_;
  result.warnings = warnings_;
  result.fixpoint_trace = trace_;
  return result;
}

EntryResult Analyzer::specialize_entry(const AnalysisResult& result,
                                       const Atom& goal) {
  summaries_ = result.summaries;
  bool user_pred = program_.index.count({goal.pred, goal.arity()}) != 0;
  if (!user_pred && !is_builtin(goal.pred, goal.arity()))
    throw AnalysisError("unknown predicate " + goal.indicator());

  EntryResult er;
  er.goal = goal;
  VarSet goal_vars;
  for (TermId t : goal.args)
    for (Variable v : arena_.vars(t)) {
      if (!goal_vars.contains(v)) er.goal_vars.push_back(v);
      goal_vars.insert(v);
    }
  std::vector<Variable> renames;
  VarSet universe = goal_vars;
  for (size_t i = 0; i < goal.args.size() && user_pred; ++i) {
    Variable r = vt_.fresh("_q");
    renames.push_back(r);
    universe.insert(r);
  }
  er.mgr = std::make_shared<BddManager>(universe, options_.node_budget);
  EvalState st;
  st.vi = universe;
  st.h = universe;  // query variables are distinct free, finite terms
  st.p = SflState::top(universe);
  st.fd = er.mgr->top();
  st.gd = er.mgr->top();
  eval_call(st, *er.mgr, goal, renames);
  er.state = std::move(st);
  return er;
}

EntryResult Analyzer::specialize_entry(const AnalysisResult& result,
                                       const std::string& name,
                                       uint32_t arity) {
  Atom goal;
  goal.pred = name;
  for (uint32_t i = 0; i < arity; ++i)
    goal.args.push_back(arena_.var(vt_.intern("A" + std::to_string(i + 1))));
  return specialize_entry(result, goal);
}

}  // namespace fta
