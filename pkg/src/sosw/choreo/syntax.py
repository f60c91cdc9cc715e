"""Choreographies and their per-agent local processes.

A choreography composes interactions ``a->b:m`` with sequencing ``;``
(lowest precedence, right associative), choice ``+`` and parallel ``||``;
``end`` is the finished protocol. Local processes reuse the same
combinators over send (``b!m``) and receive (``a?m``) leaves.

Labels are structured values carrying the full (source, target, message)
triple, so handshake matching never inspects label text; their printed
forms are ``a->b:m`` globally and ``a->b!m`` / ``a->b?m`` locally.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .._scan import Scanner
from ..render import Tree


class _Node:
    def __str__(self):
        return pretty(self)


@dataclass(frozen=True)
class Interaction(_Node):
    source: str
    target: str
    message: str

    def __post_init__(self):
        if self.source == self.target:
            raise ValueError(f"agent '{self.source}' cannot interact with itself")


@dataclass(frozen=True)
class Send(_Node):
    target: str
    message: str


@dataclass(frozen=True)
class Recv(_Node):
    source: str
    message: str


@dataclass(frozen=True)
class Seq(_Node):
    first: "Proc"
    second: "Proc"


@dataclass(frozen=True)
class Par(_Node):
    left: "Proc"
    right: "Proc"


@dataclass(frozen=True)
class Choice(_Node):
    left: "Proc"
    right: "Proc"


@dataclass(frozen=True)
class End(_Node):
    pass


END = End()

Choreo = Interaction | Seq | Par | Choice | End
LocalProc = Send | Recv | Seq | Par | Choice | End
Proc = Choreo | LocalProc


@dataclass(frozen=True)
class GlobalLabel:
    source: str
    target: str
    message: str

    def __str__(self):
        return f"{self.source}->{self.target}:{self.message}"

    _RX = re.compile(r"^(\w+)->(\w+):(\w+)$")

    @classmethod
    def parse(cls, text: str) -> "GlobalLabel":
        m = cls._RX.match(text)
        if not m:
            raise ValueError(f"not a global label: {text!r}")
        return cls(*m.groups())


@dataclass(frozen=True)
class LocalLabel:
    kind: str  # "!" for send, "?" for receive
    source: str
    target: str
    message: str

    def __str__(self):
        return f"{self.source}->{self.target}{self.kind}{self.message}"

    _RX = re.compile(r"^(\w+)->(\w+)([!?])(\w+)$")

    @classmethod
    def parse(cls, text: str) -> "LocalLabel":
        m = cls._RX.match(text)
        if not m:
            raise ValueError(f"not a local label: {text!r}")
        source, target, kind, message = m.groups()
        return cls(kind, source, target, message)


_SEQ, _CHOICE, _PAR, _ATOM = 0, 1, 2, 3


def pretty(p: Proc, ctx: int = _SEQ) -> str:
    match p:
        case End():
            return "end"
        case Interaction(source, target, message):
            return f"{source}->{target}:{message}"
        case Send(target, message):
            return f"{target}!{message}"
        case Recv(source, message):
            return f"{source}?{message}"
        case Seq(first, second):
            text = f"{pretty(first, _CHOICE)}; {pretty(second, _SEQ)}"
            level = _SEQ
        case Choice(left, right):
            text = f"{pretty(left, _PAR)} + {pretty(right, _CHOICE)}"
            level = _CHOICE
        case Par(left, right):
            text = f"{pretty(left, _ATOM)} || {pretty(right, _PAR)}"
            level = _PAR
        case _:
            raise TypeError(f"not a process: {p!r}")
    return f"({text})" if ctx > level else text


_OPERATORS = ["->", "||", ";", "+", ":", "(", ")"]
_KEYWORDS = {"end"}


def parse_choreo(text: str) -> Choreo:
    sc = Scanner(text, _OPERATORS, _KEYWORDS)
    choreo = _seq(sc)
    sc.expect_eof()
    return choreo


def _seq(sc: Scanner) -> Choreo:
    first = _choice(sc)
    if sc.try_take(";"):
        return Seq(first, _seq(sc))
    return first


def _choice(sc: Scanner) -> Choreo:
    left = _par(sc)
    if sc.try_take("+"):
        return Choice(left, _choice(sc))
    return left


def _par(sc: Scanner) -> Choreo:
    left = _atom(sc)
    if sc.try_take("||"):
        return Par(left, _par(sc))
    return left


def _atom(sc: Scanner) -> Choreo:
    if sc.try_take("end"):
        return END
    if sc.try_take("("):
        inner = _seq(sc)
        sc.take(")")
        return inner
    source = sc.take("IDENT")
    sc.take("->")
    target = sc.take("IDENT")
    sc.take(":")
    message = sc.take("IDENT")
    if source.text == target.text:
        raise_from = sc  # position of the offending interaction's end
        raise_from.error(f"agent '{source.text}' cannot interact with itself")
    return Interaction(source.text, target.text, message.text)


def terminable(p: Proc) -> bool:
    """Whether the process can finish without taking any move."""
    match p:
        case End():
            return True
        case Interaction(_, _, _) | Send(_, _) | Recv(_, _):
            return False
        case Seq(first, second):
            return terminable(first) and terminable(second)
        case Par(left, right):
            return terminable(left) and terminable(right)
        case Choice(left, right):
            return terminable(left) or terminable(right)
    raise TypeError(f"not a process: {p!r}")


def normalize(p: Proc) -> Proc:
    """Remove finished units: End;p, p;End, End||p, p||End and End+End."""
    match p:
        case Seq(first, second):
            first, second = normalize(first), normalize(second)
            if first == END:
                return second
            if second == END:
                return first
            return Seq(first, second)
        case Par(left, right):
            left, right = normalize(left), normalize(right)
            if left == END:
                return right
            if right == END:
                return left
            return Par(left, right)
        case Choice(left, right):
            left, right = normalize(left), normalize(right)
            if left == END and right == END:
                return END
            return Choice(left, right)
        case _:
            return p


def agents(c: Choreo) -> list:
    """All agent names occurring in the choreography, sorted."""
    found: set = set()

    def walk(p: Choreo):
        match p:
            case Interaction(source, target, _):
                found.add(source)
                found.add(target)
            case Seq(a, b) | Par(a, b) | Choice(a, b):
                walk(a)
                walk(b)
            case End():
                pass

    walk(c)
    return sorted(found)


def project(c: Choreo, agent: str) -> LocalProc:
    """The agent's local behaviour: sends for its outputs, receives for its
    inputs, finished units normalised away."""
    match c:
        case End():
            return END
        case Interaction(source, target, message):
            if agent == source:
                return Send(target, message)
            if agent == target:
                return Recv(source, message)
            return END
        case Seq(first, second):
            return normalize(Seq(project(first, agent), project(second, agent)))
        case Par(left, right):
            return normalize(Par(project(left, agent), project(right, agent)))
        case Choice(left, right):
            return normalize(Choice(project(left, agent), project(right, agent)))
    raise TypeError(f"not a choreography: {c!r}")


def to_tree(p: Proc) -> Tree:
    match p:
        case End():
            return Tree("end")
        case Interaction(_, _, _) | Send(_, _) | Recv(_, _):
            return Tree(pretty(p))
        case Seq(first, second):
            return Tree(";", (to_tree(first), to_tree(second)))
        case Par(left, right):
            return Tree("||", (to_tree(left), to_tree(right)))
        case Choice(left, right):
            return Tree("+", (to_tree(left), to_tree(right)))
    raise TypeError(f"not a process: {p!r}")
