"""Graphviz rendering of a lemma table.

One cluster per table entry.  The root of each tree (whose head is the
entry goal) is drawn bold, solution nodes italic, and every table-tagged
node gets a dashed edge to the root of the entry it reads solutions from.
"""

from __future__ import annotations

from .control import Program, Solution, Table
from .engine import LemmaTable, Node
from .syntax import format_clause, format_literals, var_names


def _quote(*lines: str) -> str:
    escaped = (l.replace("\\", "\\\\").replace('"', '\\"') for l in lines)
    return '"' + "\\n".join(escaped) + '"'


def _tag_text(node: Node, names: dict) -> str:
    tag = node.tag
    if tag is None:
        return "untagged"
    if isinstance(tag, Solution):
        return "solution"
    if isinstance(tag, Program):
        return f"program({format_literals([tag.literal], names)})"
    if isinstance(tag, Table):
        return f"table({format_literals(tag.subgoal, names)}) -> entry {tag.entry.index}"
    return repr(tag)


def _walk(node: Node):
    stack = [node]
    while stack:
        n = stack.pop()
        yield n
        stack.extend(reversed(n.children))


def export_dot(table: LemmaTable) -> str:
    lines = ["digraph lemma_table {", "  node [shape=box, fontname=Helvetica];"]
    lookups = []
    for entry in table.entries:
        goal_names = var_names(entry.goal.literals, canonical=True)
        lines.append(f"  subgraph cluster_{entry.index} {{")
        lines.append(f"    label={_quote(f'entry {entry.index}: ' + format_literals(entry.goal.literals, goal_names))};")
        for node in _walk(entry.root):
            clause = node.clause
            names = var_names([*clause.head, *clause.body], canonical=True)
            label = _quote(format_clause(clause.head, clause.body.literals), _tag_text(node, names))
            attrs = [f"label={label}"]
            if node.is_root:
                attrs.append('fontname="Helvetica-Bold"')
                attrs.append("style=bold")
            elif isinstance(node.tag, Solution):
                attrs.append('fontname="Helvetica-Oblique"')
                attrs.append("style=rounded")
            lines.append(f"    n{node.id} [{', '.join(attrs)}];")
            for child in node.children:
                lines.append(f"    n{node.id} -> n{child.id};")
            if isinstance(node.tag, Table) and node.tag.entry is not None:
                lookups.append((node.id, node.tag.entry.root.id, node.tag.entry.index))
        lines.append("  }")
    for src, dst, index in lookups:
        lines.append(f"  n{src} -> n{dst} [style=dashed, constraint=false, label={_quote(f'entry {index}')}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
