"""Flat Horn-clause programs indexed by predicate and arity."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .syntax import ParseError, Parser, format_clause
from .terms import Literal, rename_apart, variant_seq

RESERVED = {".", "[]"}


@dataclass(frozen=True)
class ProgramClause:
    head: Literal
    body: tuple = ()

    def __str__(self):
        return format_clause((self.head,), self.body, canonical=False)


@dataclass
class Program:
    clauses: tuple = ()
    index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.clauses = tuple(self.clauses)
        self.index = {}
        for i, c in enumerate(self.clauses):
            self.index.setdefault(c.head.key, []).append(i)

    def clauses_for(self, key: tuple[str, int]) -> list[ProgramClause]:
        """Clauses for ``(predicate, arity)`` in source order, renamed apart."""
        out = []
        for i in self.index.get(key, ()):
            c = self.clauses[i]
            m: dict = {}
            out.append(ProgramClause(rename_apart(c.head, m), rename_apart(c.body, m)))
        return out

    def __str__(self):
        return "".join(str(c) + "\n" for c in self.clauses)


def parse_program(src: str) -> Program:
    p = Parser(src)
    clauses = []
    while not p.at_end():
        p.varmap = {}
        start = p.tok
        head = p.literal()
        if head.functor in RESERVED:
            raise p.error(f"{head.functor!r} cannot head a clause", start)
        body: list = []
        if p.at(":-"):
            p.pos += 1
            body = p.literals()
        p.expect(".")
        clauses.append(ProgramClause(head, tuple(body)))
    return Program(tuple(clauses))


def load_program(path: str | Path) -> Program:
    return parse_program(Path(path).read_text(encoding="utf-8"))


def programs_variant_eq(a: Program, b: Program) -> bool:
    """Clause-by-clause comparison up to renaming of each clause."""
    if len(a.clauses) != len(b.clauses):
        return False
    return all(
        variant_seq((x.head, *x.body), (y.head, *y.body)) and len(x.body) == len(y.body)
        for x, y in zip(a.clauses, b.clauses)
    )


__all__ = [
    "ParseError",
    "Program",
    "ProgramClause",
    "load_program",
    "parse_program",
    "programs_variant_eq",
]
