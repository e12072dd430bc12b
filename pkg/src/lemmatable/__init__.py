"""Tabled resolution over sets of literals (lemma tables)."""

from .control import ControlRuleSpec, ControlRuleViolation, builtin, load_rule, parse_rule_spec, rule_select
from .engine import EngineResult, LemmaTable, TableEntry, solve
from .grammar import encode_cfg, parse_cfg
from .program import Program, ProgramClause, parse_program
from .sld import leftmost, preference, sld_solve, trace_derivation
from .syntax import ParseError, parse_literals, parse_term
from .terms import (
    IDENTITY,
    Abstraction,
    GeneralizedClause,
    Goal,
    Struct,
    Var,
    abstract,
    apply_subst,
    compose_subst,
    rename_apart,
    subsumes_goal,
    unify,
    variant_eq,
)

__all__ = [
    "IDENTITY",
    "Abstraction",
    "ControlRuleSpec",
    "ControlRuleViolation",
    "EngineResult",
    "GeneralizedClause",
    "Goal",
    "LemmaTable",
    "ParseError",
    "Program",
    "ProgramClause",
    "Struct",
    "TableEntry",
    "Var",
    "abstract",
    "apply_subst",
    "builtin",
    "compose_subst",
    "encode_cfg",
    "leftmost",
    "load_rule",
    "parse_cfg",
    "parse_literals",
    "parse_program",
    "parse_rule_spec",
    "parse_term",
    "preference",
    "rename_apart",
    "rule_select",
    "sld_solve",
    "solve",
    "subsumes_goal",
    "trace_derivation",
    "unify",
    "variant_eq",
]
