import json

import _fta

FINITENESS = """
p(X, Y) :- X = f(Y, _).
q(X, Y) :- X = f(_, Y).
r(X, Y) :- p(X, Y), q(X, Y), acyclic_term(X).
"""

GROUNDING1 = """
p(a, Y).
p(X, a).
q(X, Y) :- p(X, Y), X = f(X, Z).
"""

GROUNDING2 = """
p(a, a).
p(X, Y) :- X = f(X, _).
q(X, Y) :- p(X, Y), X = a.
"""


def analyze(source, **kwargs):
    return json.loads(_fta.analyze_text(source, **kwargs))


def pred(report, name, arity):
    for p in report["predicates"]:
        if p["name"] == name and p["arity"] == arity:
            return p
    raise KeyError(f"{name}/{arity}")


def test_finiteness_program():
    report = analyze(FINITENESS, entries=["r/2"])
    assert pred(report, "r", 2)["finite_params"] == [1, 2]
    assert pred(report, "q", 2)["fd_formula"] == "~x1 | x1 & x2"
    (entry,) = report["entries"]
    assert entry["goal"] == "r/2"
    assert entry["finite_vars"] == ["A1", "A2"]


def test_grounding_programs():
    r1 = analyze(GROUNDING1)
    assert pred(r1, "q", 2)["gd_formula"] == "x2"
    r2 = analyze(GROUNDING2)
    assert pred(r2, "q", 2)["gd_formula"] == "x1 & x2"
    fired = pred(r2, "q", 2)["reductions_fired"]
    assert any(r.startswith("gd_from") for r in fired)


def test_domain_selection():
    r = analyze(GROUNDING2, domain="hp")
    assert pred(r, "q", 2)["gd_formula"] == "true"


def test_parse_error():
    try:
        _fta.analyze_text("p(X")
    except _fta.ParseError as e:
        assert "line 1" in str(e)
    else:
        raise AssertionError("expected ParseError")


def test_unify_rational_trees():
    ws = _fta.Workspace()
    sol = ws.unify([("X", "f(X)")])
    assert sol == {"X": "f(X)"}
    assert ws.unify([("f(a)", "g(a)")]) is None
    sol = ws.unify([("f(X, b)", "f(a, Y)")])
    assert sol == {"X": "a", "Y": "b"}


def test_concrete_operators():
    ws = _fta.Workspace()
    bindings = {
        "X1": "f(X2)",
        "X2": "g(X5)",
        "X3": "f(X4)",
        "X4": "g(X3)",
    }
    assert set(ws.cyclic_vars(bindings)) == {"X3", "X4"}
    assert ws.is_finite("X1", bindings)
    assert not ws.is_finite("X3", bindings)
    ground = {"X": "f(Y, Z)", "Y": "g(Z, X)", "Z": "f(a)"}
    assert set(ws.ground_vars(ground)) == {"X", "Y", "Z"}


def test_s_normal_form():
    ws = _fta.Workspace()
    assert ws.s_normal_form({"X": "f(Y)", "Y": "a"}) == {
        "X": "f(a)",
        "Y": "a",
    }
