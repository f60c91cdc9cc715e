"""Lambda calculus with integers, addition and a zero-test conditional.

Concrete syntax: ``\\x -> e`` (the body extends maximally to the right),
application is left-associative and binds tighter than ``+``, and
``if0 e then e else e`` tests a guard for zero. Pretty-printing emits the
minimal parenthesisation that re-parses to the same term.
"""

from __future__ import annotations

from dataclasses import dataclass

from .._scan import Scanner
from ..render import Tree


class _Term:
    def __str__(self):
        return pretty(self)


@dataclass(frozen=True)
class Var(_Term):
    name: str


@dataclass(frozen=True)
class App(_Term):
    fn: "Term"
    arg: "Term"


@dataclass(frozen=True)
class Lam(_Term):
    param: str
    body: "Term"


@dataclass(frozen=True)
class Val(_Term):
    value: int


@dataclass(frozen=True)
class Add(_Term):
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class If0(_Term):
    guard: "Term"
    then: "Term"
    orelse: "Term"


Term = Var | App | Lam | Val | Add | If0

# Precedence levels for printing: lambda/if0 bodies < addition < application < atoms.
_LOW, _ADD, _APP, _ATOM = 0, 1, 2, 3


def pretty(t: Term, ctx: int = _LOW) -> str:
    match t:
        case Var(name):
            return name
        case Val(value):
            return str(value)
        case Lam(param, body):
            text = f"\\{param} -> {pretty(body, _LOW)}"
            level = _LOW
        case If0(guard, then, orelse):
            text = f"if0 {pretty(guard, _LOW)} then {pretty(then, _LOW)} else {pretty(orelse, _LOW)}"
            level = _LOW
        case Add(left, right):
            text = f"{pretty(left, _ADD)} + {pretty(right, _APP)}"
            level = _ADD
        case App(fn, arg):
            text = f"{pretty(fn, _APP)} {pretty(arg, _ATOM)}"
            level = _APP
        case _:
            raise TypeError(f"not a term: {t!r}")
    return f"({text})" if ctx > level else text


_OPERATORS = ["->", "\\", "+", "(", ")"]
_KEYWORDS = {"if0", "then", "else"}


def parse_term(text: str) -> Term:
    sc = Scanner(text, _OPERATORS, _KEYWORDS)
    term = _expr(sc)
    sc.expect_eof()
    return term


def _expr(sc: Scanner) -> Term:
    if sc.try_take("\\"):
        param = sc.take("IDENT").text
        sc.take("->")
        return Lam(param, _expr(sc))
    if sc.try_take("if0"):
        guard = _expr(sc)
        sc.take("then")
        then = _expr(sc)
        sc.take("else")
        return If0(guard, then, _expr(sc))
    return _add(sc)


def _add(sc: Scanner) -> Term:
    left = _app(sc)
    while sc.try_take("+"):
        left = Add(left, _app(sc))
    return left


def _app(sc: Scanner) -> Term:
    fn = _atom(sc)
    while sc.at("INT", "IDENT", "("):
        fn = App(fn, _atom(sc))
    return fn


def _atom(sc: Scanner) -> Term:
    if tok := sc.try_take("INT"):
        return Val(int(tok.text))
    if tok := sc.try_take("IDENT"):
        return Var(tok.text)
    if sc.try_take("("):
        inner = _expr(sc)
        sc.take(")")
        return inner
    sc.error(f"expected a term, found '{sc.cur.text or 'end of input'}'")


def to_tree(t: Term) -> Tree:
    """Tree projection of a term for structure diagrams."""
    match t:
        case Var(name):
            return Tree(name)
        case Val(value):
            return Tree(str(value))
        case Lam(param, body):
            return Tree(f"Lam {param}", (to_tree(body),))
        case App(fn, arg):
            return Tree("App", (to_tree(fn), to_tree(arg)))
        case Add(left, right):
            return Tree("Add", (to_tree(left), to_tree(right)))
        case If0(guard, then, orelse):
            return Tree("If0", (to_tree(guard), to_tree(then), to_tree(orelse)))
    raise TypeError(f"not a term: {t!r}")
