from .analysis import WpError, WpResult, check_cmd, subst_aexp, subst_bexp, wp
from .parser import parse_while
from .semantics import (
    SMALL_STEP,
    AssertFailure,
    NonTermination,
    Store,
    WhileConfig,
    WhileSemantics,
    big_step,
    eval_aexp,
    eval_bexp,
    small_step,
)
from .syntax import (
    AExp, And, Assert, Assign, BExp, Bin, Bool, Cmd, Cmp, If, Imp, Not, Num,
    Or, Seq, Skip, Var, While, pretty, pretty_aexp, pretty_bexp, pretty_cmd,
    to_tree,
)

__all__ = [
    "AExp", "And", "Assert", "Assign", "BExp", "Bin", "Bool", "Cmd", "Cmp",
    "If", "Imp", "Not", "Num", "Or", "Seq", "Skip", "Var", "While",
    "pretty", "pretty_aexp", "pretty_bexp", "pretty_cmd", "to_tree",
    "parse_while",
    "Store", "WhileConfig", "WhileSemantics", "SMALL_STEP",
    "small_step", "big_step", "eval_aexp", "eval_bexp",
    "NonTermination", "AssertFailure",
    "wp", "WpResult", "WpError", "check_cmd", "subst_aexp", "subst_bexp",
]
