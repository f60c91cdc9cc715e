"""Small-step and natural semantics for the while-language.

Configurations pair a command with a store; a finished run leaves the
``term`` marker, a failed ``assert`` leaves a distinguished non-accepting
error configuration. The small-step relation is deterministic and labels
each step with the applied rule, e.g. ``asg[x:=3]``, ``if-tt``,
``while-unfold``, ``assert-ok``. Loops unfold to a conditional in a single
``while-unfold`` step.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass

from ..core import EvalError, SosSemantics
from .syntax import (
    AExp, And, Assert, Assign, BExp, Bin, Bool, Cmd, Cmp, If, Imp, Not, Num,
    Or, Seq, Skip, Var, While, pretty_bexp, pretty_cmd,
)


class Store(Mapping):
    """An immutable variable valuation with structural equality."""

    __slots__ = ("_items", "_map")

    def __init__(self, values=None):
        mapping = dict(values or {})
        object.__setattr__(self, "_map", mapping)
        object.__setattr__(self, "_items", tuple(sorted(mapping.items())))

    def set(self, name: str, value: int) -> "Store":
        updated = dict(self._map)
        updated[name] = value
        return Store(updated)

    def __getitem__(self, name):
        return self._map[name]

    def __iter__(self):
        return iter(self._map)

    def __len__(self):
        return len(self._map)

    def __hash__(self):
        return hash(self._items)

    def __eq__(self, other):
        return isinstance(other, Store) and self._items == other._items

    def __str__(self):
        return "{" + ", ".join(f"{k}={v}" for k, v in self._items) + "}"

    def __repr__(self):
        return f"Store({dict(self._items)!r})"


@dataclass(frozen=True)
class WhileConfig:
    """A configuration: a command still to run (None once finished) and a store."""

    cmd: Cmd | None
    store: Store
    failed: bool = False

    def __str__(self):
        if self.failed:
            return f"<assert-failed, {self.store}>"
        if self.cmd is None:
            return f"<term, {self.store}>"
        return f"<{pretty_cmd(self.cmd)}, {self.store}>"


def eval_aexp(a: AExp, store: Store) -> int:
    match a:
        case Num(value):
            return value
        case Var(name):
            if name not in store:
                raise EvalError(f"unbound variable '{name}'")
            return store[name]
        case Bin("+", left, right):
            return eval_aexp(left, store) + eval_aexp(right, store)
        case Bin("-", left, right):
            return eval_aexp(left, store) - eval_aexp(right, store)
        case Bin("*", left, right):
            return eval_aexp(left, store) * eval_aexp(right, store)
    raise TypeError(f"not an arithmetic expression: {a!r}")


def eval_bexp(b: BExp, store: Store) -> bool:
    match b:
        case Bool(value):
            return value
        case Cmp("=", left, right):
            return eval_aexp(left, store) == eval_aexp(right, store)
        case Cmp("<=", left, right):
            return eval_aexp(left, store) <= eval_aexp(right, store)
        case Cmp("<", left, right):
            return eval_aexp(left, store) < eval_aexp(right, store)
        case Not(operand):
            return not eval_bexp(operand, store)
        case And(left, right):
            return eval_bexp(left, store) and eval_bexp(right, store)
        case Or(left, right):
            return eval_bexp(left, store) or eval_bexp(right, store)
        case Imp(left, right):
            return (not eval_bexp(left, store)) or eval_bexp(right, store)
    raise TypeError(f"not a boolean expression: {b!r}")


def _step(cmd: Cmd, store: Store):
    """One small step of a non-terminal command, or None for ``skip``.

    Returns (label, next command or None, next store, failed).
    """
    match cmd:
        case Skip():
            return None
        case Assign(name, expr):
            value = eval_aexp(expr, store)
            return (f"asg[{name}:={value}]", None, store.set(name, value), False)
        case Assert(cond):
            if eval_bexp(cond, store):
                return ("assert-ok", None, store, False)
            return ("assert-fail", None, store, True)
        case Seq(first, second):
            if isinstance(first, Skip):
                return ("seq-skip", second, store, False)
            label, first2, store2, failed = _step(first, store)
            if failed:
                return (label, None, store2, True)
            if first2 is None:
                return (label, second, store2, False)
            return (label, Seq(first2, second), store2, False)
        case If(cond, then, orelse):
            if eval_bexp(cond, store):
                return ("if-tt", then, store, False)
            return ("if-ff", orelse, store, False)
        case While(cond, _, body):
            return ("while-unfold", If(cond, Seq(body, cmd), Skip()), store, False)
    raise TypeError(f"not a command: {cmd!r}")


def small_step(cfg: WhileConfig) -> set:
    """The (at most one) enabled step of a configuration."""
    if cfg.cmd is None or isinstance(cfg.cmd, Skip):
        return set()
    label, cmd2, store2, failed = _step(cfg.cmd, cfg.store)
    return {(label, WhileConfig(cmd2, store2, failed))}


class WhileSemantics(SosSemantics):
    """Small-step semantics over configurations; accepting means finished
    without a failed assertion."""

    def next(self, state: WhileConfig) -> set:
        return small_step(state)

    def accepting(self, state: WhileConfig) -> bool:
        if state.failed:
            return False
        return state.cmd is None or isinstance(state.cmd, Skip)


SMALL_STEP = WhileSemantics()


@dataclass(frozen=True)
class NonTermination:
    fuel: int


@dataclass(frozen=True)
class AssertFailure:
    cond: BExp
    store: Store

    def __str__(self):
        return f"assertion failed: {pretty_bexp(self.cond)} in {self.store}"


class _OutOfFuel(Exception):
    pass


class _Failed(Exception):
    def __init__(self, cond, store):
        self.cond = cond
        self.store = store


def big_step(cmd: Cmd, store: Store | None = None, fuel: int = 1000):
    """Natural semantics: the final store, or NonTermination when the loop
    budget runs out, or AssertFailure. ``fuel`` bounds loop unfoldings."""
    if fuel <= 0:
        raise ValueError("fuel must be strictly positive")
    store = store if store is not None else Store()
    budget = [fuel]

    def run(c: Cmd, s: Store) -> Store:
        match c:
            case Skip():
                return s
            case Assign(name, expr):
                return s.set(name, eval_aexp(expr, s))
            case Assert(cond):
                if not eval_bexp(cond, s):
                    raise _Failed(cond, s)
                return s
            case Seq(first, second):
                return run(second, run(first, s))
            case If(cond, then, orelse):
                return run(then if eval_bexp(cond, s) else orelse, s)
            case While(cond, _, body):
                while eval_bexp(cond, s):
                    if budget[0] == 0:
                        raise _OutOfFuel()
                    budget[0] -= 1
                    s = run(body, s)
                return s
        raise TypeError(f"not a command: {c!r}")

    try:
        return run(cmd, store)
    except _OutOfFuel:
        return NonTermination(fuel)
    except _Failed as failure:
        return AssertFailure(failure.cond, failure.store)
