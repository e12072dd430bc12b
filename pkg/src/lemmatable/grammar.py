"""Context-free grammars compiled to the ``parse``/``wf``/``y`` encoding.

Grammar files hold one rule per line, ``%`` starts a comment::

    start: S
    S -> NP VP
    NP -> NP N | 'kim'

Nonterminals are upper-case names (lower-cased in the program), terminals
are quoted words.  A right-hand side is one terminal or one or two
nonterminals.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .program import Program, parse_program
from .syntax import ParseError, format_atom

_NONTERMINAL = re.compile(r"[A-Z][A-Za-z0-9_]*$")
_TERMINAL = re.compile(r"'((?:[^']|'')+)'$")

PARSE_AND_YIELD = """\
parse(String, Tree) :- wf(Tree, {start}), y(Tree, String, []).

y(_-Word, [Word|Words], Words).
y(_/[Tree1], Words0, Words) :- y(Tree1, Words0, Words).
y(_/[Tree1,Tree2], Words0, Words) :-
    y(Tree1, Words0, Words1), y(Tree2, Words1, Words).

"""


@dataclass(frozen=True)
class Rule:
    lhs: str
    rhs: tuple  # nonterminal names, or a single terminal word
    terminal: bool = False


@dataclass(frozen=True)
class Cfg:
    start: str
    rules: tuple

    @property
    def nonterminals(self) -> list[str]:
        seen = {self.start: None}
        for r in self.rules:
            seen.setdefault(r.lhs, None)
            if not r.terminal:
                for sym in r.rhs:
                    seen.setdefault(sym, None)
        return list(seen)


def _alternatives(text: str) -> list[str]:
    # Split on '|' outside quotes.
    parts, buf, quoted = [], [], False
    for ch in text:
        if ch == "'":
            quoted = not quoted
        if ch == "|" and not quoted:
            parts.append("".join(buf))
            buf = []
        else:
            buf.append(ch)
    parts.append("".join(buf))
    return [p.strip() for p in parts]


def _symbols(text: str) -> list[str]:
    return re.findall(r"'(?:[^']|'')+'|\S+", text)


def parse_cfg(src: str) -> Cfg:
    start = None
    rules = []
    for lineno, raw in enumerate(src.splitlines(), 1):
        line = raw.split("%", 1)[0].strip()
        if not line:
            continue
        if line.startswith("start:"):
            name = line[len("start:"):].strip()
            if not _NONTERMINAL.match(name):
                raise ParseError(f"bad start symbol {name!r}", lineno, 1)
            start = name
            continue
        lhs, arrow, rhs_text = line.partition("->")
        lhs = lhs.strip()
        if not arrow or not _NONTERMINAL.match(lhs):
            raise ParseError("expected 'LHS -> RHS'", lineno, 1)
        for alt in _alternatives(rhs_text):
            syms = _symbols(alt)
            terms = [s for s in syms if _TERMINAL.match(s)]
            nts = [s for s in syms if _NONTERMINAL.match(s)]
            if len(terms) + len(nts) != len(syms) or not syms:
                raise ParseError(f"bad right-hand side {alt!r}", lineno, 1)
            if terms and nts:
                raise ParseError(f"mixed terminals and nonterminals in {alt!r}", lineno, 1)
            if len(terms) > 1:
                raise ParseError(f"a terminal rule has exactly one word: {alt!r}", lineno, 1)
            if len(nts) > 2:
                raise ParseError(
                    f"{lhs} -> {alt} has {len(nts)} nonterminals; binarize the grammar first",
                    lineno,
                    1,
                )
            if terms:
                word = _TERMINAL.match(terms[0]).group(1).replace("''", "'")
                rules.append(Rule(lhs, (word,), terminal=True))
            else:
                rules.append(Rule(lhs, tuple(nts)))
    if not rules:
        raise ParseError("grammar has no rules", 1, 1)
    g = Cfg(start or rules[0].lhs, tuple(rules))
    lowered: dict = {}
    for name in g.nonterminals:
        other = lowered.setdefault(name.lower(), name)
        if other != name:
            raise ParseError(f"nonterminals {other} and {name} differ only in case", 1, 1)
    return g


def load_cfg(path: str | Path) -> Cfg:
    return parse_cfg(Path(path).read_text(encoding="utf-8"))


def category(name: str) -> str:
    return format_atom(name.lower())


def encode_text(g: Cfg) -> str:
    """Program source for ``g``."""
    out = [PARSE_AND_YIELD.format(start=category(g.start))]
    for r in g.rules:
        c = category(r.lhs)
        if r.terminal:
            out.append(f"wf({c}-{format_atom(r.rhs[0])}, {c}).\n")
        elif len(r.rhs) == 1:
            out.append(f"wf({c}/[Tree1], {c}) :- wf(Tree1, {category(r.rhs[0])}).\n")
        else:
            c1, c2 = (category(s) for s in r.rhs)
            out.append(f"wf({c}/[Tree1,Tree2], {c}) :- wf(Tree1, {c1}), wf(Tree2, {c2}).\n")
    return "".join(out)


def encode_cfg(g: Cfg) -> Program:
    return parse_program(encode_text(g))
