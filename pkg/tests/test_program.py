import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lemmatable.program import Program, parse_program, programs_variant_eq
from lemmatable.syntax import ParseError, format_term, parse_literals, parse_term
from lemmatable.terms import Struct, Var, term_vars, variant_seq

from oracles import fig1_program


def test_operator_sugar():
    t = parse_term("np-kim")
    assert t == Struct("-", (Struct("np"), Struct("kim")))
    t = parse_term("s/[T1,T2]")
    assert t.functor == "/" and t.args[0] == Struct("s")
    assert t.args[1].functor == "."


def test_operator_precedence_and_associativity():
    assert parse_term("a-b-c") == parse_term("(a-b)-c")
    assert parse_term("a-b/c") == parse_term("a-(b/c)")
    assert parse_term("a/b/c") == parse_term("(a/b)/c")
    assert format_term(parse_term("a-(b-c)")) == "a-(b-c)"
    assert format_term(parse_term("(a-b)/c")) == "(a-b)/c"


def test_list_sugar():
    m = {}
    t = parse_term("[Word|Words]", m)
    assert t == Struct(".", (m["Word"], m["Words"]))
    assert parse_term("[]") == Struct("[]")
    assert format_term(parse_term("[a,b|T]"), {}).startswith("[a,b|")


def test_quoted_atoms_round_trip():
    t = parse_term("'.'(a,'[]')")
    assert t == parse_term("[a]")
    assert format_term(Struct("Hello world")) == "'Hello world'"
    assert parse_term(format_term(Struct("it's"))) == Struct("it's")


def test_fact_with_operator():
    p = parse_program("wf(np-kim, np).")
    (c,) = p.clauses
    assert c.head == Struct("wf", (parse_term("np-kim"), Struct("np")))
    assert c.body == ()


def test_anonymous_variable_in_head():
    p = parse_program("y(_-Word, [Word|Words], Words).")
    head = p.clauses[0].head
    first = head.args[0]
    assert first.functor == "-"
    assert isinstance(first.args[0], Var) and first.args[0].name == "_"
    assert first.args[1] == head.args[1].args[0]


def test_anonymous_variables_are_distinct():
    (lit,) = parse_literals("p(_, _)")
    assert lit.args[0] != lit.args[1]


def test_empty_program():
    p = parse_program("")
    assert p.clauses == ()
    assert p.clauses_for(("p", 0)) == []


def test_comments_are_skipped():
    p = parse_program("% header\np(a). % trailing\n% end")
    assert len(p.clauses) == 1


def test_sample_program_clause_counts():
    p = fig1_program()
    assert len(p.clauses_for(("wf", 2))) == 6
    assert len(p.clauses_for(("y", 3))) == 3
    assert len(p.clauses_for(("parse", 2))) == 1
    assert p.clauses_for(("unknown", 0)) == []


def test_clauses_for_renames_apart():
    p = fig1_program()
    seen = set()
    for c in p.clauses_for(("wf", 2)) + p.clauses_for(("wf", 2)):
        vs = set(term_vars([c.head, *c.body]))
        assert not vs & seen
        seen |= vs
    original = set(term_vars([t for c in p.clauses for t in (c.head, *c.body)]))
    assert not original & seen


def test_same_predicate_at_two_arities():
    p = parse_program("p(a). p(a,b). p(c).")
    assert len(p.clauses_for(("p", 1))) == 2
    assert len(p.clauses_for(("p", 2))) == 1


def test_clause_order_preserved():
    p = parse_program("q(c). q(a). q(b).")
    assert [c.head.args[0].functor for c in p.clauses_for(("q", 1))] == ["c", "a", "b"]


@pytest.mark.parametrize(
    "src, line, column",
    [
        ("p(a) q(b).", 1, 6),
        ("p(a).\nq(b", 2, 4),
        ("p(a).\n  X :- q.", 2, 3),
        ("p(a) :- .", 1, 9),
        ("p(#).", 1, 3),
        ("'.'(a,b).", 1, 1),
    ],
)
def test_syntax_errors_report_position(src, line, column):
    with pytest.raises(ParseError) as info:
        parse_program(src)
    assert (info.value.line, info.value.column) == (line, column)


def test_round_trip_sample_program():
    p = fig1_program()
    again = parse_program(str(p))
    assert programs_variant_eq(p, again)


def test_variant_comparison_detects_differences():
    a = parse_program("p(X,Y) :- q(X).")
    assert not programs_variant_eq(a, parse_program("p(X,X) :- q(X)."))
    assert not programs_variant_eq(a, parse_program("p(X,Y) :- q(Y)."))
    assert programs_variant_eq(a, parse_program("p(A,B) :- q(A)."))


NAMES = st.sampled_from(["a", "b", "kim", "[]", "X", "Y", "_"])


def _term(depth):
    if depth == 0:
        return NAMES
    sub = _term(depth - 1)
    return st.one_of(
        NAMES,
        st.builds(lambda x, y: f"{x}-{y}", sub, sub),
        st.builds(lambda x, y: f"({x})/{y}", sub, sub),
        st.builds(lambda x, y: f"f({x},{y})", sub, sub),
        st.builds(lambda xs: "[" + ",".join(xs) + "]", st.lists(sub, min_size=1, max_size=3)),
        st.builds(lambda x, y: f"[{x}|{y}]", sub, sub),
    )


@settings(max_examples=200, deadline=None)
@given(st.lists(st.tuples(_term(2), st.lists(_term(2), max_size=2)), min_size=1, max_size=4))
def test_print_parse_round_trip(clauses):
    src = "".join(
        f"h({head}) :- {', '.join(f'b({b})' for b in body)}.\n" if body else f"h({head}).\n"
        for head, body in clauses
    )
    p = parse_program(src)
    assert programs_variant_eq(p, parse_program(str(p)))
