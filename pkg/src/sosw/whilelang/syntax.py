"""Abstract syntax and printing for the imperative while-language.

Commands: ``skip``, assignment ``x := a``, sequencing ``;`` (right
associative, lowest precedence), ``if b then c else c``,
``while b [inv b] do c`` and the contract ``assert b``. Branch and loop
bodies are single commands; use parentheses or ``{ }`` blocks for
sequences. Arithmetic is over unbounded integers.

Boolean expressions include an implication connective ``=>`` (lowest
precedence, right associative); the surface language rarely needs it, but
weakest-precondition output uses it and everything printed re-parses.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..render import Tree


class _Pretty:
    def __str__(self):
        return pretty(self)


# Arithmetic expressions.


@dataclass(frozen=True)
class Num(_Pretty):
    value: int


@dataclass(frozen=True)
class Var(_Pretty):
    name: str


@dataclass(frozen=True)
class Bin(_Pretty):
    op: str  # "+", "-" or "*"
    left: "AExp"
    right: "AExp"


AExp = Num | Var | Bin


# Boolean expressions.


@dataclass(frozen=True)
class Bool(_Pretty):
    value: bool


@dataclass(frozen=True)
class Cmp(_Pretty):
    op: str  # "=", "<=" or "<"
    left: AExp
    right: AExp


@dataclass(frozen=True)
class Not(_Pretty):
    operand: "BExp"


@dataclass(frozen=True)
class And(_Pretty):
    left: "BExp"
    right: "BExp"


@dataclass(frozen=True)
class Or(_Pretty):
    left: "BExp"
    right: "BExp"


@dataclass(frozen=True)
class Imp(_Pretty):
    left: "BExp"
    right: "BExp"


BExp = Bool | Cmp | Not | And | Or | Imp


# Commands.


@dataclass(frozen=True)
class Skip(_Pretty):
    pass


@dataclass(frozen=True)
class Assign(_Pretty):
    name: str
    expr: AExp


@dataclass(frozen=True)
class Seq(_Pretty):
    first: "Cmd"
    second: "Cmd"


@dataclass(frozen=True)
class If(_Pretty):
    cond: BExp
    then: "Cmd"
    orelse: "Cmd"


@dataclass(frozen=True)
class While(_Pretty):
    cond: BExp
    invariant: BExp | None
    body: "Cmd"


@dataclass(frozen=True)
class Assert(_Pretty):
    cond: BExp


Cmd = Skip | Assign | Seq | If | While | Assert


_A_SUM, _A_MUL, _A_ATOM = 1, 2, 3


def pretty_aexp(a: AExp, ctx: int = _A_SUM) -> str:
    match a:
        case Num(value):
            return str(value)
        case Var(name):
            return name
        case Bin(op, left, right):
            level = _A_MUL if op == "*" else _A_SUM
            text = f"{pretty_aexp(left, level)} {op} {pretty_aexp(right, level + 1)}"
            return f"({text})" if ctx > level else text
    raise TypeError(f"not an arithmetic expression: {a!r}")


_B_IMP, _B_OR, _B_AND, _B_NOT = 0, 1, 2, 3


def pretty_bexp(b: BExp, ctx: int = _B_IMP) -> str:
    match b:
        case Bool(value):
            return "tt" if value else "ff"
        case Cmp(op, left, right):
            return f"{pretty_aexp(left)} {op} {pretty_aexp(right)}"
        case Not(operand):
            text = f"not {pretty_bexp(operand, _B_NOT + 1)}"
            return f"({text})" if ctx > _B_NOT else text
        case And(left, right):
            text = f"{pretty_bexp(left, _B_AND)} and {pretty_bexp(right, _B_AND + 1)}"
            return f"({text})" if ctx > _B_AND else text
        case Or(left, right):
            text = f"{pretty_bexp(left, _B_OR)} or {pretty_bexp(right, _B_OR + 1)}"
            return f"({text})" if ctx > _B_OR else text
        case Imp(left, right):
            text = f"{pretty_bexp(left, _B_IMP + 1)} => {pretty_bexp(right, _B_IMP)}"
            return f"({text})" if ctx > _B_IMP else text
    raise TypeError(f"not a boolean expression: {b!r}")


def _pretty_body(c: Cmd) -> str:
    # Sequences in branch/body position need parentheses to re-parse.
    text = pretty_cmd(c)
    return f"({text})" if isinstance(c, Seq) else text


def pretty_cmd(c: Cmd) -> str:
    match c:
        case Skip():
            return "skip"
        case Assign(name, expr):
            return f"{name} := {pretty_aexp(expr)}"
        case Seq(first, second):
            return f"{_pretty_body(first)}; {pretty_cmd(second)}"
        case If(cond, then, orelse):
            return f"if {pretty_bexp(cond)} then {_pretty_body(then)} else {_pretty_body(orelse)}"
        case While(cond, None, body):
            return f"while {pretty_bexp(cond)} do {_pretty_body(body)}"
        case While(cond, invariant, body):
            return f"while {pretty_bexp(cond)} inv {pretty_bexp(invariant)} do {_pretty_body(body)}"
        case Assert(cond):
            return f"assert {pretty_bexp(cond)}"
    raise TypeError(f"not a command: {c!r}")


def pretty(node) -> str:
    if isinstance(node, (Num, Var, Bin)):
        return pretty_aexp(node)
    if isinstance(node, (Bool, Cmp, Not, And, Or, Imp)):
        return pretty_bexp(node)
    return pretty_cmd(node)


def to_tree(c) -> Tree:
    """Tree projection of a command (or expression) for structure diagrams."""
    match c:
        case Num(value):
            return Tree(str(value))
        case Var(name):
            return Tree(name)
        case Bin(op, left, right):
            return Tree(op, (to_tree(left), to_tree(right)))
        case Bool(value):
            return Tree("tt" if value else "ff")
        case Cmp(op, left, right):
            return Tree(op, (to_tree(left), to_tree(right)))
        case Not(operand):
            return Tree("not", (to_tree(operand),))
        case And(left, right):
            return Tree("and", (to_tree(left), to_tree(right)))
        case Or(left, right):
            return Tree("or", (to_tree(left), to_tree(right)))
        case Imp(left, right):
            return Tree("=>", (to_tree(left), to_tree(right)))
        case Skip():
            return Tree("skip")
        case Assign(name, expr):
            return Tree(f"{name} :=", (to_tree(expr),))
        case Seq(first, second):
            return Tree(";", (to_tree(first), to_tree(second)))
        case If(cond, then, orelse):
            return Tree("if", (to_tree(cond), to_tree(then), to_tree(orelse)))
        case While(cond, None, body):
            return Tree("while", (to_tree(cond), to_tree(body)))
        case While(cond, invariant, body):
            return Tree("while", (to_tree(cond), Tree("inv", (to_tree(invariant),)), to_tree(body)))
        case Assert(cond):
            return Tree("assert", (to_tree(cond),))
    raise TypeError(f"not a while-language node: {c!r}")
