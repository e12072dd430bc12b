"""Control rules: which tag an untagged lemma-tree node receives.

A rule file holds one case per line::

    if [root,] [body empty,] [body has] <pattern>{, <pattern>} => program <k> | program <pattern> | table | solution

Patterns are literal templates.  Upper-case names are pattern variables and
must bind to identical terms wherever they recur; ``_`` matches anything; a
bare variable matches any literal.  ``nonvar(V)`` and ``var(V)`` guard the
binding of a pattern variable.  Distinct patterns match distinct literals.

Cases are tried in order and the first one that matches fires.  If none
does, the leftmost body literal is program-resolved.  An empty body is
always tagged ``solution``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .syntax import ParseError, Parser
from .terms import GeneralizedClause, Goal, Literal, Struct, Var, match


class ControlRuleViolation(Exception):
    """A control rule produced a tag that is not allowed for the node."""


@dataclass(frozen=True)
class Solution:
    pass


@dataclass(frozen=True)
class Program:
    literal: Literal


@dataclass(eq=False)
class Table:
    """Resolve ``subgoal`` against the solutions of ``entry``.

    ``pattern`` is the entry goal instantiated onto ``subgoal``, aligned
    with the entry's goal so it pairs position-wise with solution heads.
    """

    subgoal: tuple
    entry: object = None
    cursor: int | None = None
    pattern: tuple = ()


@dataclass(frozen=True)
class RuleCase:
    patterns: tuple = ()
    guards: tuple = ()  # ("nonvar" | "var", Var)
    action: tuple = ("table",)  # ("program", k) | ("table",) | ("solution",)
    root_only: bool = False
    body_empty: bool = False
    text: str = ""


@dataclass(frozen=True)
class ControlRuleSpec:
    cases: tuple = ()
    name: str = ""

    def select(self, clause: GeneralizedClause, is_root: bool = False):
        return rule_select(self, clause, is_root)


def _split_items(text: str) -> list[str]:
    items, depth, start, quoted = [], 0, 0, False
    for i, ch in enumerate(text):
        if ch == "'":
            quoted = not quoted
        elif quoted:
            continue
        elif ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == "," and depth == 0:
            items.append(text[start:i])
            start = i + 1
    items.append(text[start:])
    return [s.strip() for s in items]


def _parse_pattern(text: str, varmap: dict, line: int, column: int):
    try:
        p = Parser(text)
        p.varmap = varmap
        t = p.term(999)
        if not p.at_end():
            raise p.error(f"unexpected {p.tok.text!r}")
    except ParseError as e:
        raise ParseError(e.message, line, column + e.column - 1) from None
    return t


def _parse_case(line_text: str, lineno: int) -> RuleCase:
    body = line_text.strip()
    if not body.startswith("if") or "=>" not in body:
        raise ParseError("expected 'if ... => action'", lineno, 1)
    column = line_text.index("if") + 3
    cond, _, action_text = body[2:].partition("=>")
    varmap: dict = {}
    root_only = body_empty = False
    patterns, guards = [], []
    for item in _split_items(cond):
        if item == "root":
            root_only = True
            continue
        if re.fullmatch(r"body\s+empty", item):
            body_empty = True
            continue
        if not item:
            raise ParseError("empty condition", lineno, column)
        item = re.sub(r"^body\s+has\s+", "", item)
        t = _parse_pattern(item, varmap, lineno, column)
        if isinstance(t, Struct) and t.functor in ("nonvar", "var") and len(t.args) == 1:
            if not isinstance(t.args[0], Var):
                raise ParseError(f"{t.functor}/1 takes a pattern variable", lineno, column)
            guards.append((t.functor, t.args[0]))
        else:
            patterns.append(t)

    action_text = action_text.strip()
    verb, _, arg = action_text.partition(" ")
    arg = arg.strip()
    if verb == "solution" and not arg:
        if patterns or guards or not body_empty:
            raise ParseError("'solution' is only allowed with a lone 'body empty' guard", lineno, column)
        action = ("solution",)
    elif verb == "table" and not arg:
        if not patterns:
            raise ParseError("'table' needs at least one pattern", lineno, column)
        action = ("table",)
    elif verb == "program" and arg:
        if arg.isdigit():
            k = int(arg)
        else:
            target = _parse_pattern(arg, varmap, lineno, column)
            if target not in patterns:
                raise ParseError(f"program target {arg!r} is not one of the patterns", lineno, column)
            k = patterns.index(target) + 1
        if not 1 <= k <= len(patterns):
            raise ParseError(f"program index {k} out of range", lineno, column)
        action = ("program", k)
    else:
        raise ParseError(f"unknown action {action_text!r}", lineno, column)
    if body_empty and patterns:
        raise ParseError("'body empty' cannot be combined with patterns", lineno, column)
    return RuleCase(tuple(patterns), tuple(guards), action, root_only, body_empty, body)


def parse_rule_spec(src: str, name: str = "") -> ControlRuleSpec:
    if src.startswith("builtin:"):
        return builtin(src)
    cases = []
    for lineno, raw in enumerate(src.splitlines(), 1):
        text = raw.split("%", 1)[0]
        if text.strip():
            cases.append(_parse_case(text, lineno))
    return ControlRuleSpec(tuple(cases), name)


def load_rule(ref: str) -> ControlRuleSpec:
    """A ``builtin:...`` name or the path of a ``.rule`` file."""
    if ref.startswith("builtin:"):
        return builtin(ref)
    return parse_rule_spec(Path(ref).read_text(encoding="utf-8"), name=ref)


# ---------------------------------------------------------------------------
# Evaluation


def _matches(case: RuleCase, body: tuple):
    """Leftmost-first assignment of the case's patterns to distinct literals."""

    def guards_ok(s: dict) -> bool:
        for kind, v in case.guards:
            bound = s.get(v, v)
            if isinstance(bound, Var) != (kind == "var"):
                return False
        return True

    def search(i: int, s: dict, used: tuple):
        if i == len(case.patterns):
            return used if guards_ok(s) else None
        pat = case.patterns[i]
        for j, lit in enumerate(body):
            if j in used:
                continue
            s2 = match(pat, lit, s)
            if s2 is not None:
                found = search(i + 1, s2, used + (j,))
                if found is not None:
                    return found
        return None

    found = search(0, {}, ())
    return None if found is None else tuple(body[j] for j in found)


def _check(tag, body: Goal, is_root: bool):
    if is_root and not isinstance(tag, Program):
        raise ControlRuleViolation(f"root node must be program-tagged, got {tag!r}")
    if isinstance(tag, Program) and tag.literal not in body:
        raise ControlRuleViolation(f"program literal {tag.literal!r} is not in the body")
    if isinstance(tag, Table):
        if not tag.subgoal or any(l not in body for l in tag.subgoal):
            raise ControlRuleViolation("table subgoal must be a non-empty subset of the body")
    if isinstance(tag, Solution) and body:
        raise ControlRuleViolation("solution tag on a node with a non-empty body")
    return tag


def rule_select(spec: ControlRuleSpec, clause: GeneralizedClause, is_root: bool = False):
    body = clause.body
    if not body:
        # No other tag is possible; a root always has a non-empty body.
        return Solution()
    for case in spec.cases:
        if case.root_only and not is_root:
            continue
        if case.body_empty:
            continue
        matched = _matches(case, body.literals)
        if matched is None:
            continue
        kind = case.action[0]
        if kind == "program":
            tag = Program(matched[case.action[1] - 1])
        elif kind == "table":
            tag = Table(matched)
        else:
            tag = Solution()
        return _check(tag, body, is_root)
    return _check(Program(body.literals[0]), body, is_root)


# ---------------------------------------------------------------------------
# Built-in rules

GRAMMAR_RULES = """\
if root, body has y(T,S0,S) => program y(T,S0,S)
if body empty => solution
if wf(T,C), nonvar(T) => program 1
if wf(T,C), y(T,S0,S), nonvar(S0) => table
"""

LEFTMOST_TABLED_RULES = """\
if body empty => solution
if root, L => program 1
if L => table
"""

BUILTIN_SOURCES = {
    "builtin:grammar": GRAMMAR_RULES,
    "builtin:leftmost": LEFTMOST_TABLED_RULES,
    "builtin:leftmost-program": "",
}


def builtin(name: str) -> ControlRuleSpec:
    """``builtin:grammar`` is the coroutining rule for the ``wf``/``y``
    encoding; ``builtin:leftmost`` tables the leftmost literal alone (the
    Earley deduction / OLDT behaviour); ``builtin:leftmost-program`` never
    tables and so degenerates to program resolution only."""
    try:
        src = BUILTIN_SOURCES[name]
    except KeyError:
        raise ValueError(f"unknown built-in rule {name!r}") from None
    return parse_rule_spec(src, name=name) if src else ControlRuleSpec((), name)
