"""Depth-bounded SLD resolution.

This is the plain top-down baseline: depth-first, clause order, new body
literals placed to the left of the remaining ones.  It does no loop
checking, so on left-recursive programs it only stops at the depth bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .program import Program
from .terms import Literal, Var, apply_subst, term_vars, unify

SelectionRule = Callable[[Sequence[Literal]], int]


def leftmost(goal: Sequence[Literal]) -> int:
    return 0


def preference(goal: Sequence[Literal]) -> int:
    """Leftmost ``wf(T,C)`` with ``T`` bound, else leftmost ``y(T,S0,S)``
    with ``S0`` bound, else leftmost."""
    for i, lit in enumerate(goal):
        if lit.key == ("wf", 2) and not isinstance(lit.args[0], Var):
            return i
    for i, lit in enumerate(goal):
        if lit.key == ("y", 3) and not isinstance(lit.args[1], Var):
            return i
    return 0


SELECTION_RULES: dict[str, SelectionRule] = {"leftmost": leftmost, "preference": preference}


@dataclass(frozen=True)
class SldAnswer:
    bindings: dict
    derivation_length: int

    def instance(self, query: Sequence[Literal]) -> tuple:
        return tuple(apply_subst(l, self.bindings) for l in query)


@dataclass(frozen=True)
class SldOutcome:
    answers: tuple
    status: str  # "exhausted" | "depth_limited" | "answer_limited"
    steps: int


def _resolve(program: Program, goal: tuple, index: int, occurs_check: bool):
    """Yield ``(substitution, resolvent)`` for each clause resolving ``goal[index]``."""
    selected = goal[index]
    rest = goal[:index] + goal[index + 1:]
    for clause in program.clauses_for(selected.key):
        s = unify(selected, clause.head, occurs_check)
        if s is not None:
            yield s, tuple(apply_subst(l, s) for l in clause.body + rest)


def sld_solve(
    program: Program,
    query: Sequence[Literal],
    rule: SelectionRule = leftmost,
    max_depth: int = 100,
    occurs_check: bool = True,
    max_answers: int | None = None,
) -> SldOutcome:
    """Explore the SLD tree of ``query`` to ``max_depth`` resolution steps.

    ``status`` is ``exhausted`` only if no branch was cut.  With
    ``max_answers`` the search stops early once that many answers are
    found, reporting ``answer_limited`` unless the tree happened to be
    finished anyway.
    """
    if not query:
        raise ValueError("query must be non-empty")
    if max_depth < 1:
        raise ValueError("max_depth must be positive")
    qvars = tuple(term_vars(list(query)))
    answers = []
    status = "exhausted"
    steps = 0
    stack = [(tuple(query), qvars, 0)]
    while stack:
        goal, vals, depth = stack.pop()
        if not goal:
            bindings = {v: t for v, t in zip(qvars, vals) if t != v}
            answers.append(SldAnswer(bindings, depth))
            if max_answers is not None and len(answers) >= max_answers and stack:
                status = "answer_limited"
                break
            continue
        if depth >= max_depth:
            status = "depth_limited"
            continue
        steps += 1
        children = [
            (resolvent, tuple(apply_subst(t, s) for t in vals), depth + 1)
            for s, resolvent in _resolve(program, goal, rule(goal), occurs_check)
        ]
        stack.extend(reversed(children))
    return SldOutcome(tuple(answers), status, steps)


def trace_derivation(
    program: Program,
    query: Sequence[Literal],
    rule: SelectionRule = leftmost,
    steps: int = 1,
    horizon: int = 50,
    occurs_check: bool = True,
) -> list[tuple]:
    """The first ``steps`` steps of the leftmost longest derivation.

    The SLD tree is searched depth-first up to ``max(steps, horizon)``
    steps; the leftmost branch that is still open at that depth is
    followed, so on an infinite tree this is the leftmost infinite branch.
    When every branch ends sooner, the leftmost longest one is used.

    Each step is ``(selected literal, resolvent)``; a selection that no
    clause resolves gives resolvent ``None`` and ends the sequence.
    """
    if steps < 1:
        raise ValueError("steps must be positive")
    horizon = max(steps, horizon)
    best: list = []
    path: list = []

    def dfs(goal: tuple) -> bool:
        nonlocal best
        if len(path) >= horizon or not goal:
            if len(path) > len(best):
                best = list(path)
            return len(path) >= horizon
        index = rule(goal)
        selected = goal[index]
        extended = False
        for _, resolvent in _resolve(program, goal, index, occurs_check):
            extended = True
            path.append((selected, resolvent))
            done = dfs(resolvent)
            path.pop()
            if done:
                return True
        if not extended:
            path.append((selected, None))
            if len(path) > len(best):
                best = list(path)
            path.pop()
        return False

    dfs(tuple(query))
    return best[:steps]
