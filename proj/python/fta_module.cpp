#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>

#include "fta/concrete.hpp"
#include "fta/parser.hpp"
#include "fta/report.hpp"

namespace py = pybind11;
using namespace fta;

namespace {

AnalyzerOptions make_options(const std::string& domain,
                             unsigned max_iterations, bool strict) {
  AnalyzerOptions opt;
  if (domain == "hp")
    opt.domain = DomainLevel::HP;
  else if (domain == "hp-fd")
    opt.domain = DomainLevel::HP_FD;
  else if (domain == "hp-fd-gd")
    opt.domain = DomainLevel::HP_FD_GD;
  else
    throw py::value_error("domain must be hp, hp-fd or hp-fd-gd");
  opt.max_iterations = max_iterations;
  opt.strict = strict;
  return opt;
}

// Analysis of a program text; the report comes back as its JSON form.
std::string analyze_text(const std::string& source,
                         const std::vector<std::string>& entries,
                         const std::string& domain, unsigned max_iterations,
                         bool strict) {
  TermArena arena;
  VarTable vt;
  Program program = parse_program(source, arena, vt);
  Analyzer analyzer(arena, vt, std::move(program),
                    make_options(domain, max_iterations, strict));
  AnalysisResult result = analyzer.analyze();
  std::vector<EntryResult> ers;
  for (const std::string& spec : entries) {
    auto slash = spec.rfind('/');
    if (slash == std::string::npos)
      throw py::value_error("entry must be NAME/ARITY: " + spec);
    ers.push_back(analyzer.specialize_entry(
        result, spec.substr(0, slash),
        static_cast<uint32_t>(std::stoul(spec.substr(slash + 1)))));
  }
  return render_json(build_report(result, vt, ers, arena));
}

// String-driven access to terms, substitutions and the concrete-semantics
// operators. One workspace holds one arena and variable table.
class Workspace {
 public:
  std::optional<std::map<std::string, std::string>> unify(
      const std::vector<std::pair<std::string, std::string>>& equations,
      const std::map<std::string, std::string>& base) {
    std::vector<Equation> eqs;
    for (const auto& [l, r] : equations) eqs.emplace_back(term(l), term(r));
    auto result = rat_unify(arena_, eqs, subst(base));
    if (!result) return std::nullopt;
    return to_map(*result);
  }

  std::map<std::string, std::string> s_normal_form(
      const std::map<std::string, std::string>& bindings) {
    return to_map(s_normalize(arena_, subst(bindings)));
  }

  std::vector<std::string> cyclic(
      const std::map<std::string, std::string>& bindings) {
    return names(cyclic_vars(arena_, subst(bindings)));
  }

  std::vector<std::string> ground(
      const std::map<std::string, std::string>& bindings) {
    return names(ground_vars(arena_, subst(bindings)));
  }

  bool finite_tree(const std::string& var,
                   const std::map<std::string, std::string>& bindings) {
    return rt_is_finite(arena_, subst(bindings), var_of(var));
  }

  bool ground_tree(const std::string& var,
                   const std::map<std::string, std::string>& bindings) {
    return rt_is_ground(arena_, subst(bindings), var_of(var));
  }

 private:
  TermId term(const std::string& text) {
    return parse_term_text(text, arena_, vt_, "ws");
  }

  Variable var_of(const std::string& name) {
    TermId t = term(name);
    if (!arena_.is_var(t)) throw py::value_error("not a variable: " + name);
    return arena_.var_of(t);
  }

  Subst subst(const std::map<std::string, std::string>& bindings) {
    std::vector<std::pair<Variable, TermId>> bs;
    for (const auto& [v, t] : bindings) bs.emplace_back(var_of(v), term(t));
    return Subst::make(arena_, bs);
  }

  std::map<std::string, std::string> to_map(const Subst& s) {
    std::map<std::string, std::string> out;
    for (const auto& [v, t] : s.bindings())
      out[strip(vt_.name(v))] = strip(arena_.to_string(t, vt_));
    return out;
  }

  std::vector<std::string> names(const VarSet& vs) {
    std::vector<std::string> out;
    for (Variable v : vs) out.push_back(strip(vt_.name(v)));
    return out;
  }

  // Scope suffixes are an internal naming detail; peel them off.
  static std::string strip(const std::string& s) {
    std::string out;
    size_t i = 0;
    while (i < s.size()) {
      if (s[i] == '@') {
        while (i < s.size() && s[i] != ',' && s[i] != ')') ++i;
      } else {
        out += s[i++];
      }
    }
    return out;
  }

  TermArena arena_;
  VarTable vt_;
};

}  // namespace

PYBIND11_MODULE(_fta, m) {
  m.doc() = "Finite-tree analysis for logic programs over rational trees";

  m.def("analyze_text", &analyze_text, py::arg("source"),
        py::arg("entries") = std::vector<std::string>{},
        py::arg("domain") = "hp-fd-gd", py::arg("max_iterations") = 100,
        py::arg("strict") = false,
        "Analyze a program; returns the report as a JSON string.");

  py::register_exception<ParseError>(m, "ParseError");
  py::register_exception<AnalysisError>(m, "AnalysisError");
  py::register_exception<SubstError>(m, "SubstError");

  py::class_<Workspace>(m, "Workspace")
      .def(py::init<>())
      .def("unify", &Workspace::unify, py::arg("equations"),
           py::arg("base") = std::map<std::string, std::string>{},
           "Most general solution in the rational-tree theory, or None on "
           "a functor clash.")
      .def("s_normal_form", &Workspace::s_normal_form, py::arg("bindings"),
           "Equivalent substitution in variable-idempotent normal form.")
      .def("cyclic_vars", &Workspace::cyclic, py::arg("bindings"),
           "Domain variables whose limit tree is infinite.")
      .def("ground_vars", &Workspace::ground, py::arg("bindings"),
           "Domain variables whose limit tree is ground.")
      .def("is_finite", &Workspace::finite_tree, py::arg("var"),
           py::arg("bindings"))
      .def("is_ground", &Workspace::ground_tree, py::arg("var"),
           py::arg("bindings"));
}
