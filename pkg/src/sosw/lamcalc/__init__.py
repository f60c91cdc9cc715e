from .semantics import (
    FULL,
    LAZY,
    STRICT,
    FullSemantics,
    LazySemantics,
    StrictSemantics,
    free_vars,
    full_next,
    lazy_next,
    strict_next,
    subst,
)
from .syntax import Add, App, If0, Lam, Term, Val, Var, parse_term, pretty, to_tree

__all__ = [
    "Add", "App", "If0", "Lam", "Term", "Val", "Var",
    "parse_term", "pretty", "to_tree",
    "free_vars", "subst", "full_next", "lazy_next", "strict_next",
    "FullSemantics", "LazySemantics", "StrictSemantics",
    "FULL", "LAZY", "STRICT",
]
