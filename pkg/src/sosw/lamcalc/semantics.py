"""Reduction semantics for the lambda language: one nondeterministic
semantics plus deterministic lazy and strict strategies.

The full semantics rewrites anywhere, including under binders, with one
exception that the strategies share: an application whose head is an
abstraction fires its beta redex and nothing else. Labels are
``beta-<binder>``, ``add``, ``if0-tt`` and ``if0-ff``; congruence steps
keep the inner label.
"""

from __future__ import annotations

from ..core import SosSemantics
from .syntax import Add, App, If0, Lam, Term, Val, Var


def free_vars(t: Term) -> frozenset:
    match t:
        case Var(name):
            return frozenset({name})
        case Val(_):
            return frozenset()
        case Lam(param, body):
            return free_vars(body) - {param}
        case App(fn, arg):
            return free_vars(fn) | free_vars(arg)
        case Add(left, right):
            return free_vars(left) | free_vars(right)
        case If0(guard, then, orelse):
            return free_vars(guard) | free_vars(then) | free_vars(orelse)
    raise TypeError(f"not a term: {t!r}")


def _fresh(base: str, avoid: frozenset) -> str:
    suffix = 1
    while f"{base}{suffix}" in avoid:
        suffix += 1
    return f"{base}{suffix}"


def subst(body: Term, name: str, arg: Term) -> Term:
    """Capture-avoiding substitution of ``arg`` for ``name`` in ``body``.

    Binders shadowing ``name`` stop the substitution; binders whose name
    occurs free in ``arg`` are renamed to the base name with the smallest
    unused numeric suffix.
    """
    match body:
        case Var(other):
            return arg if other == name else body
        case Val(_):
            return body
        case App(fn, a):
            return App(subst(fn, name, arg), subst(a, name, arg))
        case Add(left, right):
            return Add(subst(left, name, arg), subst(right, name, arg))
        case If0(guard, then, orelse):
            return If0(subst(guard, name, arg), subst(then, name, arg), subst(orelse, name, arg))
        case Lam(param, inner):
            if param == name:
                return body
            if name not in free_vars(inner):
                return body
            if param in free_vars(arg):
                renamed = _fresh(param, free_vars(inner) | free_vars(arg) | {name})
                inner = subst(inner, param, Var(renamed))
                param = renamed
            return Lam(param, subst(inner, name, arg))
    raise TypeError(f"not a term: {body!r}")


def full_next(t: Term) -> set:
    """All enabled rewrites, anywhere in the term (beta shadows the other
    options at a lambda-headed application)."""
    match t:
        case Var(_) | Val(_):
            return set()
        case Lam(param, body):
            return {(lab, Lam(param, body2)) for (lab, body2) in full_next(body)}
        case App(Lam(param, body), arg):
            return {(f"beta-{param}", subst(body, param, arg))}
        case App(fn, arg):
            steps = {(lab, App(fn2, arg)) for (lab, fn2) in full_next(fn)}
            steps |= {(lab, App(fn, arg2)) for (lab, arg2) in full_next(arg)}
            return steps
        case Add(left, right):
            steps = set()
            if isinstance(left, Val) and isinstance(right, Val):
                steps.add(("add", Val(left.value + right.value)))
            steps |= {(lab, Add(left2, right)) for (lab, left2) in full_next(left)}
            steps |= {(lab, Add(left, right2)) for (lab, right2) in full_next(right)}
            return steps
        case If0(guard, then, orelse):
            steps = set()
            if isinstance(guard, Val):
                steps.add(("if0-tt", then) if guard.value == 0 else ("if0-ff", orelse))
            steps |= {(lab, If0(guard2, then, orelse)) for (lab, guard2) in full_next(guard)}
            steps |= {(lab, If0(guard, then2, orelse)) for (lab, then2) in full_next(then)}
            steps |= {(lab, If0(guard, then, orelse2)) for (lab, orelse2) in full_next(orelse)}
            return steps
    raise TypeError(f"not a term: {t!r}")


def _is_value(t: Term) -> bool:
    return isinstance(t, (Val, Lam))


def lazy_next(t: Term) -> set:
    """Call-by-name flavoured strategy: beta fires without evaluating the
    argument; at most one successor; never reduces under binders."""
    match t:
        case Var(_) | Val(_) | Lam(_, _):
            return set()
        case App(Lam(param, body), arg):
            return {(f"beta-{param}", subst(body, param, arg))}
        case App(fn, arg):
            step = lazy_next(fn)
            if step:
                ((lab, fn2),) = step
                return {(lab, App(fn2, arg))}
            step = lazy_next(arg)
            if step:
                ((lab, arg2),) = step
                return {(lab, App(fn, arg2))}
            return set()
        case Add(left, right):
            return _arith_step(left, right, lazy_next, Add, "add")
        case If0(guard, then, orelse):
            return _if0_step(guard, then, orelse, lazy_next)
    raise TypeError(f"not a term: {t!r}")


def strict_next(t: Term) -> set:
    """Call-by-value flavoured strategy: the argument is evaluated to a
    value before beta; at most one successor; never reduces under binders."""
    match t:
        case Var(_) | Val(_) | Lam(_, _):
            return set()
        case App(fn, arg):
            step = strict_next(fn)
            if step:
                ((lab, fn2),) = step
                return {(lab, App(fn2, arg))}
            if not _is_value(fn):
                return set()
            step = strict_next(arg)
            if step:
                ((lab, arg2),) = step
                return {(lab, App(fn, arg2))}
            if _is_value(arg) and isinstance(fn, Lam):
                return {(f"beta-{fn.param}", subst(fn.body, fn.param, arg))}
            return set()
        case Add(left, right):
            return _arith_step(left, right, strict_next, Add, "add")
        case If0(guard, then, orelse):
            return _if0_step(guard, then, orelse, strict_next)
    raise TypeError(f"not a term: {t!r}")


def _arith_step(left, right, step_fn, ctor, fire_label):
    step = step_fn(left)
    if step:
        ((lab, left2),) = step
        return {(lab, ctor(left2, right))}
    if not isinstance(left, Val):
        return set()
    step = step_fn(right)
    if step:
        ((lab, right2),) = step
        return {(lab, ctor(left, right2))}
    if isinstance(right, Val):
        return {(fire_label, Val(left.value + right.value))}
    return set()


def _if0_step(guard, then, orelse, step_fn):
    if isinstance(guard, Val):
        return {("if0-tt", then) if guard.value == 0 else ("if0-ff", orelse)}
    step = step_fn(guard)
    if step:
        ((lab, guard2),) = step
        return {(lab, If0(guard2, then, orelse))}
    return set()


class FullSemantics(SosSemantics):
    def next(self, state):
        return full_next(state)


class LazySemantics(SosSemantics):
    def next(self, state):
        return lazy_next(state)


class StrictSemantics(SosSemantics):
    def next(self, state):
        return strict_next(state)


FULL = FullSemantics()
LAZY = LazySemantics()
STRICT = StrictSemantics()
