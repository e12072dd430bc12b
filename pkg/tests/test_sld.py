import pytest

from lemmatable.program import parse_program
from lemmatable.sld import leftmost, preference, sld_solve, trace_derivation
from lemmatable.syntax import parse_literals, parse_term
from lemmatable.terms import Goal, match_sequence, variant_eq

from oracles import GRAMMAR_CORPUS, corpus, fig1_program, grammar_program, least_model


def instances(outcome, query):
    return [a.instance(query) for a in outcome.answers]


def test_leftmost_finds_the_parse():
    q = parse_literals("parse([kim,walks],T)")
    out = sld_solve(fig1_program(), q, leftmost, 40)
    expected = parse_literals("parse([kim,walks], s/[np-kim,vp/[v-walks]])")
    assert [tuple(expected)] == instances(out, q)
    # Left recursion in wf(_, np) keeps the tree infinite.
    assert out.status == "depth_limited"


def test_preference_is_infinite_but_finds_the_refutation():
    # Hand-executed: the refutation selects parse, y, wf(s), y (fact), wf(np-kim),
    # y (unary), wf(vp), y (fact), wf(v-walks): nine steps, left of the
    # infinite NP -> NP N branch.
    q = parse_literals("parse([kim,walks],T)")
    out = sld_solve(fig1_program(), q, preference, 50)
    assert out.status == "depth_limited"
    assert [a.derivation_length for a in out.answers] == [9]
    assert instances(out, q) == [tuple(parse_literals("parse([kim,walks], s/[np-kim,vp/[v-walks]])"))]


def test_yield_of_single_word():
    m = {}
    q = parse_literals("y(T,[kim],[])", m)
    out = sld_solve(fig1_program(), q, leftmost, 10)
    assert out.status == "depth_limited"
    first = out.answers[0]
    assert first.derivation_length == 1
    assert variant_eq(Goal([first.bindings[m["T"]]]), Goal([parse_term("_-kim")]))
    # One answer per depth: k unary wrappers around the fact take k+1 steps.
    assert [a.derivation_length for a in out.answers] == list(range(1, 11))


def test_empty_query_rejected():
    with pytest.raises(ValueError):
        sld_solve(parse_program("p."), [], leftmost, 5)


def test_exhausted_on_finite_tree():
    p = parse_program("q(a). q(b). r(b). t(X) :- q(X), r(X).")
    out = sld_solve(p, parse_literals("t(X)"), leftmost, 5)
    assert out.status == "exhausted"
    assert len(out.answers) == 1


def test_depth_bound_cuts_exactly_at_max_depth():
    p = parse_program("n(z). n(s(X)) :- n(X).")
    out = sld_solve(p, parse_literals("n(X)"), leftmost, 3)
    assert [a.derivation_length for a in out.answers] == [1, 2, 3]
    assert out.status == "depth_limited"


def test_max_answers_stops_early():
    p = parse_program("n(z). n(s(X)) :- n(X).")
    out = sld_solve(p, parse_literals("n(X)"), leftmost, 50, max_answers=2)
    assert len(out.answers) == 2
    assert out.status == "answer_limited"


def test_new_literals_go_left():
    p = parse_program("a :- b, c. b. c.")
    steps = trace_derivation(p, parse_literals("a, d"), leftmost, 2)
    assert [l.functor for l in steps[0][1]] == ["b", "c", "d"]


class TestTrace:
    PREFIX = [
        "parse(KW,T)",
        "y(T,KW,[])",
        "wf(_/[T1,T2],s)",
        "y(T1,KW,S1)",
        "wf(_/[T3,T4],np)",
        "y(T3,KW,S3)",
        "wf(_/[T5,T6],np)",
    ]

    def test_matches_known_prefix(self):
        q = parse_literals("parse([kim,walks],T)")
        steps = trace_derivation(fig1_program(), q, preference, 7)
        assert len(steps) == 7
        for (selected, _), text in zip(steps, self.PREFIX):
            expected = parse_term(text.replace("KW", "[kim,walks]"))
            assert variant_eq(Goal([selected]), Goal([expected])), (selected, text)

    def test_goal_membership_row_4(self):
        q = parse_literals("parse([kim,walks],T)")
        steps = trace_derivation(fig1_program(), q, preference, 3)
        expected = Goal(parse_literals("wf(T1,np), wf(T2,vp), y(T1,[kim,walks],S1), y(T2,S1,[])"))
        assert variant_eq(Goal(steps[2][1]), expected)

    def test_first_steps(self):
        q = parse_literals("parse([kim,walks],T)")
        steps = trace_derivation(fig1_program(), q, preference, 3)
        assert steps[0][0] == q[0]
        assert steps[1][0].functor == "y"
        assert variant_eq(Goal([steps[2][0]]), Goal([parse_term("wf(_/[T1,T2],s)")]))

    def test_empty_program(self):
        q = parse_literals("parse(KW,T)")
        steps = trace_derivation(parse_program(""), q, preference, 1)
        assert steps == [(q[0], None)]

    def test_finite_tree_gives_longest_leftmost_branch(self):
        p = parse_program("a :- b. a :- c, c. c :- d. d.")
        steps = trace_derivation(p, parse_literals("a"), leftmost, 10)
        assert [s[0].functor for s in steps] == ["a", "c", "d", "c", "d"]


# ---------------------------------------------------------------------------
# Properties over the test corpus


def _cases():
    for name, src, queries in corpus():
        for q in queries:
            yield pytest.param(src, q, id=f"{name}:{q}")


@pytest.mark.parametrize("src, query", list(_cases()))
def test_answers_hold_in_least_model(src, query):
    p = parse_program(src)
    model = least_model(p)
    lits = parse_literals(query)
    out = sld_solve(p, lits, leftmost, 6)
    for answer in out.answers:
        for lit in answer.instance(lits):
            assert lit in model


def _grammar_cases():
    for name, (_, strings) in GRAMMAR_CORPUS.items():
        for s in strings:
            yield pytest.param(name, s, id=f"{name}:{s}")


@pytest.mark.parametrize("name, sentence", list(_grammar_cases()))
def test_answer_set_independent_of_selection_rule(name, sentence):
    p = grammar_program(name)
    q = parse_literals(f"parse([{','.join(sentence.split())}],T)")
    a = sld_solve(p, q, leftmost, 60)
    b = sld_solve(p, q, preference, 60)
    assert a.status == b.status == "exhausted"
    ia, ib = instances(a, q), instances(b, q)
    assert all(any(match_sequence(x, y) is not None for y in ib) for x in ia)
    assert all(any(match_sequence(y, x) is not None for x in ia) for y in ib)
    assert len(set(ia)) == len(set(ib))
