#include <doctest.h>

#include "fta/parser.hpp"
#include "support.hpp"

using namespace fta;
using test::Ctx;

TEST_CASE("facts and rules") {
  Ctx c;
  SUBCASE("fact clause") {
    Program p = parse_program("p(a, Y).", c.arena, c.vt);
    REQUIRE(p.clauses.size() == 1);
    const Clause& cl = p.clauses[0];
    CHECK(cl.head.pred == "p");
    CHECK(cl.head.arity() == 2);
    CHECK(cl.body.empty());
    CHECK(c.arena.is_ground(cl.head.args[0]));
    CHECK(c.arena.is_var(cl.head.args[1]));
    CHECK(cl.vars.size() == 1);
  }
  SUBCASE("three-goal body") {
    Program p = parse_program(
        "r(X,Y) :- p(X,Y), q(X,Y), acyclic_term(X).", c.arena, c.vt);
    REQUIRE(p.clauses.size() == 1);
    const Clause& cl = p.clauses[0];
    REQUIRE(cl.body.size() == 3);
    CHECK(cl.body[0].kind == Goal::Kind::Call);
    CHECK(cl.body[0].atom.pred == "p");
    CHECK(cl.body[2].atom.pred == "acyclic_term");
    CHECK(cl.vars.size() == 2);
  }
  SUBCASE("unification goal") {
    Program p = parse_program("p(X) :- X = f(X, _).", c.arena, c.vt);
    const Goal& g = p.clauses[0].body[0];
    CHECK(g.kind == Goal::Kind::Unify);
    CHECK(c.arena.is_var(g.lhs));
    CHECK(c.arena.functor_name(c.arena.functor_of(g.rhs)) == "f");
  }
}

TEST_CASE("syntax errors carry positions") {
  Ctx c;
  SUBCASE("unterminated args at end of input") {
    CHECK_THROWS_AS(parse_program("p(X", c.arena, c.vt), ParseError);
    try {
      parse_program("p(X", c.arena, c.vt);
    } catch (const ParseError& e) {
      CHECK(e.line() == 1);
      CHECK(e.column() >= 4);
    }
  }
  SUBCASE("missing clause terminator") {
    CHECK_THROWS_AS(parse_program("p(a)\nq(b).", c.arena, c.vt), ParseError);
  }
  SUBCASE("variable as goal") {
    CHECK_THROWS_AS(parse_program("p(X) :- X.", c.arena, c.vt), ParseError);
  }
}

TEST_CASE("lexical details") {
  Ctx c;
  SUBCASE("comments and whitespace") {
    Program p = parse_program(
        "% leading comment\np(X). % trailing\n\nq(Y) :- p(Y).\n", c.arena,
        c.vt);
    CHECK(p.clauses.size() == 2);
  }
  SUBCASE("anonymous variables are fresh per occurrence") {
    Program p = parse_program("p(_, _).", c.arena, c.vt);
    CHECK(p.clauses[0].vars.size() == 2);
    CHECK(p.clauses[0].head.args[0] != p.clauses[0].head.args[1]);
  }
  SUBCASE("same name is the same variable within one clause only") {
    Program p = parse_program("p(X, X).\nq(X).", c.arena, c.vt);
    CHECK(p.clauses[0].head.args[0] == p.clauses[0].head.args[1]);
    CHECK(p.clauses[0].head.args[0] != p.clauses[1].head.args[0]);
  }
  SUBCASE("integers are constants") {
    Program p = parse_program("p(42).", c.arena, c.vt);
    CHECK(c.arena.is_ground(p.clauses[0].head.args[0]));
  }
  SUBCASE("zero-arity predicates and cut-as-atom") {
    Program p = parse_program("go :- p, !.", c.arena, c.vt);
    REQUIRE(p.clauses[0].body.size() == 2);
    CHECK(p.clauses[0].body[1].atom.pred == "!");
  }
}

TEST_CASE("program index") {
  Ctx c;
  Program p = parse_program("p(a).\np(b).\nq(X) :- p(X).", c.arena, c.vt);
  CHECK(p.index.at({"p", 1}).size() == 2);
  CHECK(p.index.at({"q", 1}).size() == 1);
}
