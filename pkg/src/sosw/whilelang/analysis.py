"""Static analyses: weakest preconditions and simple syntactic warnings."""

from __future__ import annotations

from dataclasses import dataclass

from ..core import EvalError
from .syntax import (
    AExp, And, Assert, Assign, BExp, Bin, Bool, Cmd, Cmp, If, Imp, Not, Num,
    Or, Seq, Skip, Var, While,
)


class WpError(EvalError):
    """Weakest preconditions need every loop annotated with an invariant."""


@dataclass(frozen=True)
class WpResult:
    """The computed precondition plus the loops' verification conditions
    (empty for loop-free commands)."""

    precondition: BExp
    obligations: tuple


def subst_aexp(a: AExp, name: str, repl: AExp) -> AExp:
    match a:
        case Num(_):
            return a
        case Var(other):
            return repl if other == name else a
        case Bin(op, left, right):
            return Bin(op, subst_aexp(left, name, repl), subst_aexp(right, name, repl))
    raise TypeError(f"not an arithmetic expression: {a!r}")


def subst_bexp(b: BExp, name: str, repl: AExp) -> BExp:
    match b:
        case Bool(_):
            return b
        case Cmp(op, left, right):
            return Cmp(op, subst_aexp(left, name, repl), subst_aexp(right, name, repl))
        case Not(operand):
            return Not(subst_bexp(operand, name, repl))
        case And(left, right):
            return And(subst_bexp(left, name, repl), subst_bexp(right, name, repl))
        case Or(left, right):
            return Or(subst_bexp(left, name, repl), subst_bexp(right, name, repl))
        case Imp(left, right):
            return Imp(subst_bexp(left, name, repl), subst_bexp(right, name, repl))
    raise TypeError(f"not a boolean expression: {b!r}")


_TT = Bool(True)
_FF = Bool(False)


def _and(left: BExp, right: BExp) -> BExp:
    # The only simplifications applied anywhere: tt/\Q -> Q, Q/\tt -> Q.
    if left == _TT:
        return right
    if right == _TT:
        return left
    return And(left, right)


def _imp(left: BExp, right: BExp) -> BExp:
    # ... and ff => Q -> tt.
    if left == _FF:
        return _TT
    return Imp(left, right)


def wp(cmd: Cmd, post: BExp) -> WpResult:
    """Textbook weakest-precondition rules; annotated loops contribute the
    invariant-preservation and invariant-exit verification conditions."""
    obligations: list = []

    def go(c: Cmd, q: BExp) -> BExp:
        match c:
            case Skip():
                return q
            case Assign(name, expr):
                return subst_bexp(q, name, expr)
            case Seq(first, second):
                return go(first, go(second, q))
            case If(cond, then, orelse):
                return _and(_imp(cond, go(then, q)), _imp(Not(cond), go(orelse, q)))
            case Assert(cond):
                return _and(cond, q)
            case While(cond, invariant, body):
                if invariant is None:
                    raise WpError("loop without invariant annotation")
                body_pre = go(body, invariant)
                obligations.append(_imp(_and(invariant, cond), body_pre))
                obligations.append(_imp(_and(invariant, Not(cond)), q))
                return invariant
        raise TypeError(f"not a command: {c!r}")

    return WpResult(go(cmd, post), tuple(obligations))


def _aexp_reads(a: AExp) -> tuple:
    match a:
        case Num(_):
            return ()
        case Var(name):
            return (name,)
        case Bin(_, left, right):
            return _aexp_reads(left) + _aexp_reads(right)
    raise TypeError(f"not an arithmetic expression: {a!r}")


def _bexp_reads(b: BExp) -> tuple:
    match b:
        case Bool(_):
            return ()
        case Cmp(_, left, right):
            return _aexp_reads(left) + _aexp_reads(right)
        case Not(operand):
            return _bexp_reads(operand)
        case And(left, right) | Or(left, right) | Imp(left, right):
            return _bexp_reads(left) + _bexp_reads(right)
    raise TypeError(f"not a boolean expression: {b!r}")


def check_cmd(cmd: Cmd) -> list:
    """Warnings: possible read-before-assignment and unannotated loops.

    A read counts as suspicious when some syntactic path reaches it without
    an assignment to the variable; branches keep only the intersection of
    their assignments, and loop bodies are checked for the first iteration.
    An empty list means the program is clean.
    """
    warnings: list = []
    seen: set = set()

    def warn(message: str):
        if message not in seen:
            seen.add(message)
            warnings.append(message)

    def note_reads(names, assigned):
        for name in names:
            if name not in assigned:
                warn(f"variable '{name}' may be read before assignment")

    def go(c: Cmd, assigned: frozenset) -> frozenset:
        match c:
            case Skip():
                return assigned
            case Assign(name, expr):
                note_reads(_aexp_reads(expr), assigned)
                return assigned | {name}
            case Seq(first, second):
                return go(second, go(first, assigned))
            case If(cond, then, orelse):
                note_reads(_bexp_reads(cond), assigned)
                return go(then, assigned) & go(orelse, assigned)
            case While(cond, invariant, body):
                note_reads(_bexp_reads(cond), assigned)
                if invariant is None:
                    warn("loop without invariant annotation")
                else:
                    note_reads(_bexp_reads(invariant), assigned)
                go(body, assigned)
                return assigned
            case Assert(cond):
                note_reads(_bexp_reads(cond), assigned)
                return assigned
        raise TypeError(f"not a command: {c!r}")

    go(cmd, frozenset())
    return warnings
