#include <doctest.h>

#include "fta/parser.hpp"
#include "fta/report.hpp"

using namespace fta;

namespace {

struct Rep {
  TermArena arena;
  VarTable vt;
  Program program;
  std::unique_ptr<Analyzer> analyzer;
  AnalysisResult result;
  std::vector<EntryResult> entries;

  explicit Rep(const std::string& text,
               const std::vector<std::pair<std::string, uint32_t>>& es = {}) {
    program = parse_program(text, arena, vt);
    analyzer = std::make_unique<Analyzer>(arena, vt, program);
    result = analyzer->analyze();
    for (auto& [n, a] : es)
      entries.push_back(analyzer->specialize_entry(result, n, a));
  }

  ReportData report() { return build_report(result, vt, entries, arena); }
};

}  // namespace

TEST_CASE("report carries the summary facts") {
  Rep r("p(X, Y) :- X = f(Y, _).\n");
  ReportData data = r.report();
  REQUIRE(data.predicates.size() == 1);
  const auto& p = data.predicates[0];
  CHECK(p.name == "p");
  CHECK(p.arity == 2);
  CHECK(p.finite_params == std::vector<int>{1, 2});
  CHECK(p.fd_formula == "~x1 | x1 & x2");
  CHECK(p.reductions_fired.empty());
}

TEST_CASE("json round-trip re-derives the identical text report") {
  Rep r(
      "p(a, Y).\n"
      "p(X, a).\n"
      "q(X, Y) :- p(X, Y), X = f(X, Z), mystery(Y).\n",
      {{"q", 2}});
  ReportData data = r.report();
  std::string direct = render_text(data);
  std::string via_json = render_text(report_from_json(render_json(data)));
  CHECK(direct == via_json);
  CHECK(report_from_json(render_json(data)) == data);
}

TEST_CASE("json shape is stable") {
  Rep r("p(a).\n");
  std::string json = render_json(r.report());
  for (const char* key :
       {"\"predicates\"", "\"name\"", "\"arity\"", "\"finite_params\"",
        "\"sharing\"", "\"groups\"", "\"free\"", "\"linear\"",
        "\"fd_formula\"", "\"gd_formula\"", "\"reductions_fired\"",
        "\"warnings\"", "\"entries\""}) {
    CAPTURE(key);
    CHECK(json.find(key) != std::string::npos);
  }
}

TEST_CASE("entry sections render") {
  Rep r("p(X, Y) :- X = f(Y, _).\n", {{"p", 2}});
  ReportData data = r.report();
  REQUIRE(data.entries.size() == 1);
  CHECK(data.entries[0].goal == "p/2");
  CHECK(data.entries[0].finite_vars.size() == 2);
  std::string text = render_text(data);
  CHECK(text.find("entry p/2") != std::string::npos);
}
