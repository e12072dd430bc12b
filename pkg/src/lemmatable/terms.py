"""Terms, substitutions, unification and goal-level matching.

A substitution is a plain ``dict`` mapping :class:`Var` to terms.  Variables
compare by id only, so a renamed copy of ``X`` is a different variable even
though it prints the same.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence, Union

# Process-wide so that ids never collide between programs, queries and engines.
_ids = itertools.count(1)


def fresh_id() -> int:
    return next(_ids)


@dataclass(frozen=True, slots=True)
class Var:
    name: str = field(compare=False)
    id: int = field(default_factory=fresh_id)

    def __repr__(self):
        return f"{self.name}_{self.id}"


@dataclass(frozen=True, slots=True)
class Struct:
    functor: str
    args: tuple = ()

    @property
    def arity(self) -> int:
        return len(self.args)

    @property
    def key(self) -> tuple[str, int]:
        return (self.functor, len(self.args))

    def __repr__(self):
        from .syntax import format_term

        return format_term(self)


Term = Union[Var, Struct]
# A literal is a compound whose functor is the predicate symbol.
Literal = Struct
Subst = dict


def atom(name: str) -> Struct:
    return Struct(name)


NIL = Struct("[]")


def make_list(items: Sequence[Term], tail: Term = NIL) -> Term:
    for item in reversed(items):
        tail = Struct(".", (item, tail))
    return tail


def is_ground(t: Term) -> bool:
    if isinstance(t, Var):
        return False
    return all(is_ground(a) for a in t.args)


def term_vars(t, acc: dict | None = None) -> dict:
    """Variables of ``t`` in first-occurrence order (as dict keys)."""
    if acc is None:
        acc = {}
    if isinstance(t, Var):
        acc.setdefault(t, None)
    elif isinstance(t, Struct):
        for a in t.args:
            term_vars(a, acc)
    elif isinstance(t, Goal):
        for lit in t.literals:
            term_vars(lit, acc)
    elif isinstance(t, GeneralizedClause):
        for lit in t.head:
            term_vars(lit, acc)
        term_vars(t.body, acc)
    else:
        for x in t:
            term_vars(x, acc)
    return acc


# ---------------------------------------------------------------------------
# Goals and generalized clauses


def _term_key(t: Term, numbering: dict) -> tuple:
    if isinstance(t, Var):
        n = numbering.setdefault(t, len(numbering))
        return (0, n)
    return (1, len(t.args), t.functor, tuple(_term_key(a, numbering) for a in t.args))


def literal_key(lit: Literal) -> tuple:
    """Sort key: predicate, arity, then structure with variables numbered
    by first occurrence inside the literal."""
    return (lit.functor, len(lit.args), _term_key(lit, {}))


class Goal:
    """A finite set of literals, read conjunctively.

    Literals are kept in canonical order (see :func:`literal_key`; ties keep
    insertion order) and exact duplicates are dropped.
    """

    __slots__ = ("literals", "_set")

    def __init__(self, literals: Iterable[Literal] = ()):
        seen = {}
        for lit in literals:
            seen.setdefault(lit, None)
        self.literals: tuple = tuple(sorted(seen, key=literal_key))
        self._set = frozenset(self.literals)

    def __iter__(self) -> Iterator[Literal]:
        return iter(self.literals)

    def __len__(self):
        return len(self.literals)

    def __bool__(self):
        return bool(self.literals)

    def __contains__(self, lit):
        return lit in self._set

    def __eq__(self, other):
        return isinstance(other, Goal) and self._set == other._set

    def __hash__(self):
        return hash(self._set)

    def __repr__(self):
        return "{" + ", ".join(map(repr, self.literals)) + "}"

    def without(self, lits: Iterable[Literal]) -> "Goal":
        drop = set(lits)
        return Goal(l for l in self.literals if l not in drop)


@dataclass(frozen=True)
class GeneralizedClause:
    """``head <- body``.

    The head is a tuple aligned position-by-position with the goal of the
    table entry the clause belongs to; the body is a :class:`Goal`.
    """

    head: tuple
    body: Goal

    @property
    def head_goal(self) -> Goal:
        return Goal(self.head)

    def __repr__(self):
        from .syntax import format_clause

        return format_clause(self.head, self.body.literals)


# ---------------------------------------------------------------------------
# Substitution


def apply_subst(x, s: Subst):
    """Apply ``s`` to a term, literal, goal, clause or sequence of terms."""
    if not s:
        return x
    if isinstance(x, Var):
        return s.get(x, x)
    if isinstance(x, Struct):
        if not x.args:
            return x
        return Struct(x.functor, tuple(apply_subst(a, s) for a in x.args))
    if isinstance(x, Goal):
        return Goal(apply_subst(l, s) for l in x.literals)
    if isinstance(x, GeneralizedClause):
        return GeneralizedClause(
            tuple(apply_subst(l, s) for l in x.head), apply_subst(x.body, s)
        )
    return type(x)(apply_subst(e, s) for e in x)


def compose_subst(s1: Subst, s2: Subst) -> Subst:
    """Substitution equivalent to applying ``s1`` then ``s2``."""
    out = {}
    for v, t in s1.items():
        t2 = apply_subst(t, s2)
        if t2 != v:
            out[v] = t2
    for v, t in s2.items():
        if v not in s1 and t != v:
            out[v] = t
    return out


def _walk(t: Term, s: dict) -> Term:
    while isinstance(t, Var) and t in s:
        t = s[t]
    return t


def _occurs(v: Var, t: Term, s: dict) -> bool:
    stack = [t]
    while stack:
        t = _walk(stack.pop(), s)
        if t == v:
            return True
        if isinstance(t, Struct):
            stack.extend(t.args)
    return False


def _resolve(t: Term, s: dict, active: frozenset = frozenset()) -> Term:
    # ``active`` stops expansion of cyclic bindings (occurs check off).
    while isinstance(t, Var) and t in s and t not in active:
        active = active | {t}
        t = s[t]
    if isinstance(t, Struct) and t.args:
        return Struct(t.functor, tuple(_resolve(a, s, active) for a in t.args))
    return t


def unify_pairs(pairs: Iterable[tuple[Term, Term]], occurs_check: bool = True) -> Subst | None:
    """Most general unifier of a set of equations, or ``None``.

    With the occurs check on, the result is idempotent: no bound variable
    occurs in any binding.  Without it a cyclic binding such as ``X = f(X)``
    is returned as is.
    """
    s: dict = {}
    stack = list(pairs)
    stack.reverse()
    while stack:
        a, b = stack.pop()
        a = _walk(a, s)
        b = _walk(b, s)
        if a == b:
            continue
        if isinstance(a, Var):
            if occurs_check and _occurs(a, b, s):
                return None
            s[a] = b
        elif isinstance(b, Var):
            if occurs_check and _occurs(b, a, s):
                return None
            s[b] = a
        else:
            if a.functor != b.functor or len(a.args) != len(b.args):
                return None
            stack.extend(reversed(list(zip(a.args, b.args))))
    return {v: _resolve(t, s) for v, t in s.items()}


def unify(a: Term, b: Term, occurs_check: bool = True) -> Subst | None:
    return unify_pairs([(a, b)], occurs_check)


def rename_apart(x, mapping: dict | None = None):
    """Copy ``x`` with every variable replaced by a fresh one of the same name."""
    if mapping is None:
        mapping = {}
    for v in term_vars(x):
        if v not in mapping:
            mapping[v] = Var(v.name)
    return apply_subst(x, mapping)


# ---------------------------------------------------------------------------
# Matching, subsumption and variants


def match(pattern: Term, target: Term, s: dict) -> dict | None:
    """One-way matching: extend ``s`` so that ``pattern`` under ``s`` equals
    ``target``.  Variables of ``target`` are treated as constants."""
    stack = [(pattern, target)]
    s = dict(s)
    while stack:
        p, t = stack.pop()
        if isinstance(p, Var):
            bound = s.get(p)
            if bound is None:
                s[p] = t
            elif bound != t:
                return None
        elif isinstance(t, Var):
            return None
        elif p.functor != t.functor or len(p.args) != len(t.args):
            return None
        else:
            stack.extend(zip(p.args, t.args))
    return s


def _strip(s: dict) -> Subst:
    return {v: t for v, t in s.items() if t != v}


def subsumes_goal(g: Goal, g2: Goal) -> Subst | None:
    """A substitution ``s`` with ``g`` under ``s`` equal to ``g2`` as a set.

    Several literals of ``g`` may land on the same literal of ``g2``; every
    literal of ``g2`` must be hit.  Returns ``None`` if there is no such
    substitution.
    """
    src = g.literals
    dst = g2.literals
    if len(src) < len(dst) or (not src) != (not dst):
        return None

    def search(i: int, s: dict, hit: frozenset):
        if len(dst) - len(hit) > len(src) - i:
            return None
        if i == len(src):
            return s
        for j, lit in enumerate(dst):
            s2 = match(src[i], lit, s)
            if s2 is not None:
                found = search(i + 1, s2, hit | {j})
                if found is not None:
                    return found
        return None

    found = search(0, {}, frozenset())
    return None if found is None else _strip(found)


def match_sequence(patterns: Sequence[Term], targets: Sequence[Term]) -> Subst | None:
    """Position-wise one-way matching of two equal-length sequences."""
    if len(patterns) != len(targets):
        return None
    s: dict | None = {}
    for p, t in zip(patterns, targets):
        s = match(p, t, s)
        if s is None:
            return None
    return _strip(s)


def _is_renaming(s: dict) -> bool:
    vals = list(s.values())
    return all(isinstance(t, Var) for t in vals) and len(set(vals)) == len(vals)


def variant_eq(g: Goal, g2: Goal) -> bool:
    """True iff ``g`` and ``g2`` are equal up to a bijective variable renaming."""
    src, dst = g.literals, g2.literals
    if len(src) != len(dst):
        return False

    def search(i: int, s: dict, used: frozenset) -> bool:
        if i == len(src):
            return True
        for j, lit in enumerate(dst):
            if j in used:
                continue
            s2 = match(src[i], lit, s)
            if s2 is not None and _is_renaming(s2) and search(i + 1, s2, used | {j}):
                return True
        return False

    return search(0, {}, frozenset())


def variant_seq(a: Sequence[Term], b: Sequence[Term]) -> bool:
    """Position-wise variant check of two term sequences."""
    if len(a) != len(b):
        return False
    s: dict | None = {}
    for x, y in zip(a, b):
        s = match(x, y, s)
        if s is None:
            return False
    return _is_renaming(s)


# ---------------------------------------------------------------------------
# Abstraction


@dataclass(frozen=True)
class Abstraction:
    """Goal generalisation applied before a new table entry is created.

    ``depth=None`` is the identity.  ``depth=d`` bounds the term depth of
    every literal argument to ``d`` (a constant or variable has depth 1),
    replacing compound subterms that would exceed the bound by fresh
    variables.
    """

    depth: int | None = None

    def __post_init__(self):
        if self.depth is not None and self.depth < 1:
            raise ValueError("abstraction depth must be positive")

    @classmethod
    def parse(cls, text: str) -> "Abstraction":
        if text == "identity":
            return cls()
        kind, _, n = text.partition(":")
        if kind == "depth" and n.isdigit():
            return cls(int(n))
        raise ValueError(f"unknown abstraction {text!r}")

    def __str__(self):
        return "identity" if self.depth is None else f"depth:{self.depth}"

    def __call__(self, g: Goal) -> Goal:
        return abstract(self, g)


IDENTITY = Abstraction()


def _cut(t: Term, budget: int) -> Term:
    if isinstance(t, Var) or not t.args:
        return t
    if budget <= 1:
        return Var("_")
    return Struct(t.functor, tuple(_cut(a, budget - 1) for a in t.args))


def abstract(alpha: Abstraction, g: Goal) -> Goal:
    if alpha.depth is None:
        return g
    return Goal(Struct(l.functor, tuple(_cut(a, alpha.depth) for a in l.args)) for l in g)
