"""Reading and writing the Prolog-like term syntax.

Lower-case names and quoted names are symbols, names starting with an
upper-case letter or ``_`` are variables (a lone ``_`` is anonymous).
``[a,b|T]`` is list sugar over ``'.'/2`` and ``[]``.  Two infix operators
are built in, both left-associative: ``/`` (400) and ``-`` (500).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .terms import NIL, Struct, Term, Var, term_vars

OPERATORS = {"-": 500, "/": 400}
ARG_PRECEDENCE = 999


class ParseError(Exception):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+|%[^\n]*)
  | (?P<var>[A-Z_][A-Za-z0-9_]*)
  | (?P<name>[a-z][A-Za-z0-9_]*|[0-9]+)
  | (?P<quoted>'(?:[^'\\]|\\.|'')*')
  | (?P<punct>:-|[()\[\]|,./-])
    """,
    re.VERBOSE,
)


@dataclass
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(src: str) -> list[Token]:
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:
            raise ParseError(f"unexpected character {src[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        text = m.group()
        if kind != "ws":
            if kind == "quoted":
                kind = "name"
                text = text[1:-1].replace("''", "'").replace("\\'", "'")
            tokens.append(Token(kind, text, line, pos - line_start + 1))
        newlines = text.count("\n") if kind == "ws" else 0
        if newlines:
            line += newlines
            line_start = pos + text.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class Parser:
    def __init__(self, src: str):
        self.tokens = tokenize(src)
        self.pos = 0
        self.varmap: dict[str, Var] = {}

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.column)

    def at(self, text: str) -> bool:
        return self.tok.kind == "punct" and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        tok = self.tok
        self.pos += 1
        return tok

    def at_end(self) -> bool:
        return self.tok.kind == "eof"

    def variable(self, name: str) -> Var:
        if name == "_":
            return Var("_")
        v = self.varmap.get(name)
        if v is None:
            v = self.varmap[name] = Var(name)
        return v

    def term(self, max_prec: int = 1200) -> Term:
        left = self.primary()
        left_prec = 0
        while self.tok.kind == "punct" and self.tok.text in OPERATORS:
            prec = OPERATORS[self.tok.text]
            if prec > max_prec or left_prec > prec:
                break
            op = self.tok.text
            self.pos += 1
            right = self.term(prec - 1)
            left = Struct(op, (left, right))
            left_prec = prec
        return left

    def primary(self) -> Term:
        tok = self.tok
        if tok.kind == "var":
            self.pos += 1
            return self.variable(tok.text)
        if tok.kind == "name":
            self.pos += 1
            if self.at("("):
                self.pos += 1
                args = [self.term(ARG_PRECEDENCE)]
                while self.at(","):
                    self.pos += 1
                    args.append(self.term(ARG_PRECEDENCE))
                self.expect(")")
                return Struct(tok.text, tuple(args))
            return Struct(tok.text)
        if self.at("["):
            self.pos += 1
            if self.at("]"):
                self.pos += 1
                return NIL
            items = [self.term(ARG_PRECEDENCE)]
            while self.at(","):
                self.pos += 1
                items.append(self.term(ARG_PRECEDENCE))
            tail = NIL
            if self.at("|"):
                self.pos += 1
                tail = self.term(ARG_PRECEDENCE)
            self.expect("]")
            for item in reversed(items):
                tail = Struct(".", (item, tail))
            return tail
        if self.at("("):
            self.pos += 1
            t = self.term(1200)
            self.expect(")")
            return t
        found = tok.text or "end of input"
        raise self.error(f"unexpected {found!r}")

    def literal(self) -> Struct:
        tok = self.tok
        t = self.term(ARG_PRECEDENCE)
        if not isinstance(t, Struct):
            raise self.error("a literal cannot be a variable", tok)
        return t

    def literals(self) -> list[Struct]:
        lits = [self.literal()]
        while self.at(","):
            self.pos += 1
            lits.append(self.literal())
        return lits


def parse_term(text: str, varmap: dict | None = None) -> Term:
    p = Parser(text)
    if varmap is not None:
        p.varmap = varmap
    t = p.term()
    if not p.at_end():
        raise p.error(f"unexpected {p.tok.text!r}")
    return t


def parse_literals(text: str, varmap: dict | None = None) -> list[Struct]:
    """Parse a comma-separated literal sequence with an optional final '.'.

    Passing the same ``varmap`` to several calls shares variables by name.
    """
    p = Parser(text)
    if varmap is not None:
        p.varmap = varmap
    if p.at_end():
        raise p.error("empty query")
    lits = p.literals()
    if p.at("."):
        p.pos += 1
    if not p.at_end():
        raise p.error(f"unexpected {p.tok.text!r}")
    return lits


# ---------------------------------------------------------------------------
# Printing

_PLAIN_NAME = re.compile(r"[a-z][A-Za-z0-9_]*$|[0-9]+$")


def format_atom(name: str) -> str:
    if _PLAIN_NAME.match(name) or name == "[]":
        return name
    return "'" + name.replace("'", "''") + "'"


def _fmt(t: Term, names: dict, prec: int) -> str:
    if isinstance(t, Var):
        return names.get(t) or repr(t)
    if not t.args:
        return format_atom(t.functor)
    if t.functor == "." and len(t.args) == 2:
        items = []
        while isinstance(t, Struct) and t.functor == "." and len(t.args) == 2:
            items.append(_fmt(t.args[0], names, ARG_PRECEDENCE))
            t = t.args[1]
        text = ",".join(items)
        if t != NIL:
            text += "|" + _fmt(t, names, ARG_PRECEDENCE)
        return "[" + text + "]"
    if t.functor in OPERATORS and len(t.args) == 2:
        op_prec = OPERATORS[t.functor]
        text = _fmt(t.args[0], names, op_prec) + t.functor + _fmt(t.args[1], names, op_prec - 1)
        return f"({text})" if op_prec > prec else text
    args = ",".join(_fmt(a, names, ARG_PRECEDENCE) for a in t.args)
    return f"{format_atom(t.functor)}({args})"


def _letters(n: int) -> str:
    letter = chr(ord("A") + n % 26)
    return letter if n < 26 else f"{letter}{n // 26}"


def var_names(terms: Iterable, canonical: bool = False) -> dict:
    """Printable names for the variables of ``terms``.

    ``canonical`` numbers variables by first occurrence (A, B, ..., Z, A1,
    ...).  Otherwise the source names are kept, suffixed where two distinct
    variables share one; anonymous variables seen once stay ``_``.
    """
    order = list(term_vars(list(terms)))
    if canonical:
        return {v: _letters(i) for i, v in enumerate(order)}
    counts: dict[str, int] = {}
    for v in order:
        counts[v.name] = counts.get(v.name, 0) + 1
    names = {}
    used = set(v.name for v in order if v.name != "_" and counts[v.name] == 1)
    seq = 0
    for v in order:
        if v.name != "_" and counts[v.name] == 1:
            names[v] = v.name
            continue
        if v.name == "_" and _occurrences(v, terms) == 1:
            names[v] = "_"
            continue
        base = "_G" if v.name == "_" else v.name
        while True:
            seq += 1
            cand = f"{base}{seq}"
            if cand not in used:
                break
        used.add(cand)
        names[v] = cand
    return names


def _occurrences(v: Var, terms) -> int:
    count = 0
    stack = list(terms)
    while stack:
        t = stack.pop()
        if isinstance(t, Var):
            count += t == v
        elif isinstance(t, Struct):
            stack.extend(t.args)
        else:
            stack.extend(t)
    return count


def format_term(t: Term, names: dict | None = None) -> str:
    return _fmt(t, names or {}, 1200)


def format_literals(lits: Sequence[Term], names: dict | None = None) -> str:
    return ", ".join(_fmt(l, names or {}, ARG_PRECEDENCE) for l in lits)


def format_clause(head: Sequence[Term], body: Sequence[Term], canonical: bool = True) -> str:
    """``h1, h2 :- b1, b2.`` or ``h1.`` when the body is empty."""
    names = var_names([*head, *body], canonical=canonical)
    text = format_literals(head, names)
    if body:
        text += " :- " + format_literals(body, names)
    return text + "."
