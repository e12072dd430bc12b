"""The lemma table proof procedure.

Each table entry pairs a goal (a set of literals) with a lemma tree and a
solution list.  Untagged tree nodes are tagged by a control rule and then
expanded (prediction); nodes tagged ``Table`` consume solutions of another
entry one at a time through a cursor (completion).  A single FIFO worklist
drives both operations until nothing applies or the step budget runs out.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .control import ControlRuleSpec, ControlRuleViolation, Program as ProgramTag
from .control import Solution, Table, rule_select
from .program import Program
from .terms import (
    IDENTITY,
    Abstraction,
    GeneralizedClause,
    Goal,
    Struct,
    apply_subst,
    match_sequence,
    rename_apart,
    subsumes_goal,
    unify,
    unify_pairs,
)


class EngineError(AssertionError):
    """An internal invariant of the engine was broken."""


@dataclass(eq=False)
class Node:
    id: int
    clause: GeneralizedClause
    entry: "TableEntry"
    parent: "Node | None" = None
    tag: object = None
    children: list = field(default_factory=list)
    scheduled: bool = False

    @property
    def is_root(self) -> bool:
        return self.parent is None


def _clause_goal(c: GeneralizedClause) -> Goal:
    # Heads are compared position by position, bodies as sets.
    lits = [Struct(f"$head{i}", (l,)) for i, l in enumerate(c.head)]
    lits.extend(Struct("$body", (l,)) for l in c.body)
    return Goal(lits)


@dataclass(eq=False)
class TableEntry:
    goal: Goal
    index: int
    root: Node | None = None
    solutions: list = field(default_factory=list)
    consumers: list = field(default_factory=list)

    def add_solution(self, clause: GeneralizedClause, dedup: bool = True) -> bool:
        """Append ``clause`` unless ``dedup`` is on and an existing solution
        subsumes it.  Returns whether it was appended."""
        if match_sequence(self.goal.literals, clause.head) is None:
            raise EngineError(f"solution {clause!r} is not an instance of {self.goal!r}")
        if dedup:
            g = None
            for old in self.solutions:
                # Cheap positional head test first; the joint test is rarely needed.
                if match_sequence(old.head, clause.head) is None:
                    continue
                g = g or _clause_goal(clause)
                if subsumes_goal(_clause_goal(old), g) is not None:
                    return False
        self.solutions.append(clause)
        return True


@dataclass(frozen=True)
class EngineResult:
    solutions: tuple
    status: str  # "fixpoint" | "step_limited"
    stats: dict
    table: "LemmaTable | None" = field(default=None, compare=False, repr=False)


class LemmaTable:
    def __init__(
        self,
        goal: Goal,
        abstraction: Abstraction = IDENTITY,
        *,
        dedup: bool = True,
        occurs_check: bool = True,
        check: bool = False,
    ):
        if not goal:
            raise ValueError("the goal must be non-empty")
        self.abstraction = abstraction
        self.dedup = dedup
        self.occurs_check = occurs_check
        self.check = check
        self.entries: list[TableEntry] = []
        self.worklist: deque = deque()
        self.node_count = 0
        self.predictions = 0
        self.completions = 0
        self._new_entry(goal)

    @property
    def top(self) -> TableEntry:
        return self.entries[0]

    @property
    def stats(self) -> dict:
        return {
            "entries": len(self.entries),
            "nodes": self.node_count,
            "predictions": self.predictions,
            "completions": self.completions,
        }

    def _new_entry(self, goal: Goal) -> TableEntry:
        entry = TableEntry(goal, len(self.entries))
        self.entries.append(entry)
        entry.root = self._new_node(GeneralizedClause(goal.literals, goal), entry, None)
        return entry

    def _new_node(self, clause: GeneralizedClause, entry: TableEntry, parent: Node | None) -> Node:
        if self.check and match_sequence(entry.goal.literals, clause.head) is None:
            raise EngineError(f"node head {clause.head!r} is not an instance of {entry.goal!r}")
        node = Node(self.node_count, clause, entry, parent)
        self.node_count += 1
        if parent is not None:
            parent.children.append(node)
        self.worklist.append(("predict", node))
        return node

    def _schedule_completion(self, node: Node):
        if not node.scheduled and node.tag.cursor < len(node.tag.entry.solutions):
            node.scheduled = True
            self.worklist.append(("complete", node))

    def lookup(self, subgoal: Goal):
        """First entry (in creation order) whose goal subsumes ``subgoal``,
        with the matching substitution."""
        for entry in self.entries:
            s = subsumes_goal(entry.goal, subgoal)
            if s is not None:
                return entry, s
        return None, None

    def predict(self, node: Node, rule: ControlRuleSpec, program: Program):
        if node.tag is not None:
            raise EngineError(f"node {node.id} is already tagged")
        self.predictions += 1
        tag = rule_select(rule, node.clause, node.is_root)
        if node.is_root and not isinstance(tag, ProgramTag):
            raise ControlRuleViolation(f"root node {node.id} must be program-tagged")
        node.tag = tag
        head, body = node.clause.head, node.clause.body

        if isinstance(tag, Solution):
            if node.entry.add_solution(node.clause, self.dedup):
                for consumer in node.entry.consumers:
                    self._schedule_completion(consumer)

        elif isinstance(tag, ProgramTag):
            selected = tag.literal
            rest = body.without([selected])
            for clause in program.clauses_for(selected.key):
                s = unify(selected, clause.head, self.occurs_check)
                if s is None:
                    continue
                child = GeneralizedClause(
                    tuple(apply_subst(l, s) for l in head),
                    Goal(apply_subst(l, s) for l in (*clause.body, *rest.literals)),
                )
                self._new_node(child, node.entry, node)

        elif isinstance(tag, Table):
            wanted = Goal(tag.subgoal)
            entry, s = self.lookup(wanted)
            if entry is None:
                entry = self._new_entry(rename_apart(self.abstraction(wanted)))
                s = subsumes_goal(entry.goal, wanted)
                if s is None:
                    raise EngineError("abstraction does not subsume its argument")
            tag.entry = entry
            tag.cursor = 0
            tag.pattern = tuple(apply_subst(l, s) for l in entry.goal.literals)
            entry.consumers.append(node)
            self._schedule_completion(node)

        else:
            raise ControlRuleViolation(f"unknown tag {tag!r}")

    def complete(self, node: Node):
        tag = node.tag
        if not isinstance(tag, Table) or tag.cursor is None:
            raise EngineError(f"node {node.id} is not table-tagged")
        if tag.cursor >= len(tag.entry.solutions):
            raise EngineError(f"cursor of node {node.id} is already at the end")
        self.completions += 1
        solution = rename_apart(tag.entry.solutions[tag.cursor])
        tag.cursor += 1
        s = unify_pairs(zip(tag.pattern, solution.head), self.occurs_check)
        if s is not None:
            rest = node.clause.body.without(tag.subgoal)
            child = GeneralizedClause(
                tuple(apply_subst(l, s) for l in node.clause.head),
                Goal(apply_subst(l, s) for l in (*solution.body.literals, *rest.literals)),
            )
            self._new_node(child, node.entry, node)

    def step(self, rule: ControlRuleSpec, program: Program) -> bool:
        """Perform one pending operation; False when none is left."""
        if not self.worklist:
            return False
        kind, node = self.worklist.popleft()
        if kind == "predict":
            self.predict(node, rule, program)
        else:
            node.scheduled = False
            self.complete(node)
            self._schedule_completion(node)
        return True

    def run(self, rule: ControlRuleSpec, program: Program, max_steps: int = 100_000) -> EngineResult:
        if max_steps < 1:
            raise ValueError("max_steps must be positive")
        status = "fixpoint"
        for _ in range(max_steps):
            if not self.step(rule, program):
                break
        else:
            if self.worklist:
                status = "step_limited"
        return EngineResult(tuple(self.top.solutions), status, self.stats, self)


def solve(
    program: Program,
    goal: Goal,
    rule: ControlRuleSpec,
    abstraction: Abstraction = IDENTITY,
    max_steps: int = 100_000,
    *,
    dedup: bool = True,
    occurs_check: bool = True,
    check: bool = False,
) -> EngineResult:
    """Run the procedure on ``goal`` and return the top entry's solutions."""
    table = LemmaTable(goal, abstraction, dedup=dedup, occurs_check=occurs_check, check=check)
    return table.run(rule, program, max_steps)
