"""Recursive-descent parser for the while-language."""

from __future__ import annotations

from ..core import ParseError
from .._scan import Scanner
from .syntax import (
    And, Assert, Assign, BExp, Bin, Bool, Cmd, Cmp, If, Imp, Not, Num, Or,
    Seq, Skip, Var, While,
)

_OPERATORS = [":=", "=>", "<=", ";", "(", ")", "{", "}", "+", "-", "*", "=", "<"]
_KEYWORDS = {
    "skip", "if", "then", "else", "while", "inv", "do", "assert",
    "not", "and", "or", "tt", "ff",
}


def parse_while(text: str) -> Cmd:
    sc = Scanner(text, _OPERATORS, _KEYWORDS)
    cmd = _cmd(sc)
    sc.expect_eof()
    return cmd


def _cmd(sc: Scanner) -> Cmd:
    first = _atom_cmd(sc)
    if sc.try_take(";"):
        return Seq(first, _cmd(sc))
    return first


def _atom_cmd(sc: Scanner) -> Cmd:
    if sc.try_take("skip"):
        return Skip()
    if sc.try_take("assert"):
        return Assert(_bexp(sc))
    if sc.try_take("if"):
        cond = _bexp(sc)
        sc.take("then")
        then = _atom_cmd(sc)
        sc.take("else")
        return If(cond, then, _atom_cmd(sc))
    if sc.try_take("while"):
        cond = _bexp(sc)
        invariant = _bexp(sc) if sc.try_take("inv") else None
        sc.take("do")
        return While(cond, invariant, _atom_cmd(sc))
    if sc.try_take("{"):
        inner = _cmd(sc)
        sc.take("}")
        return inner
    if sc.try_take("("):
        inner = _cmd(sc)
        sc.take(")")
        return inner
    if tok := sc.try_take("IDENT"):
        sc.take(":=")
        return Assign(tok.text, _aexp(sc))
    sc.error(f"expected a command, found '{sc.cur.text or 'end of input'}'")


def _aexp(sc: Scanner):
    left = _term(sc)
    while tok := sc.try_take("+", "-"):
        left = Bin(tok.text, left, _term(sc))
    return left


def _term(sc: Scanner):
    left = _factor(sc)
    while sc.try_take("*"):
        left = Bin("*", left, _factor(sc))
    return left


def _factor(sc: Scanner):
    if tok := sc.try_take("INT"):
        return Num(int(tok.text))
    if tok := sc.try_take("IDENT"):
        return Var(tok.text)
    if sc.try_take("("):
        inner = _aexp(sc)
        sc.take(")")
        return inner
    sc.error(f"expected an arithmetic expression, found '{sc.cur.text or 'end of input'}'")


def _bexp(sc: Scanner) -> BExp:
    left = _b_or(sc)
    if sc.try_take("=>"):
        return Imp(left, _bexp(sc))
    return left


def _b_or(sc: Scanner) -> BExp:
    left = _b_and(sc)
    while sc.try_take("or"):
        left = Or(left, _b_and(sc))
    return left


def _b_and(sc: Scanner) -> BExp:
    left = _b_not(sc)
    while sc.try_take("and"):
        left = And(left, _b_not(sc))
    return left


def _b_not(sc: Scanner) -> BExp:
    if sc.try_take("not"):
        return Not(_b_not(sc))
    return _b_atom(sc)


def _b_atom(sc: Scanner) -> BExp:
    if sc.try_take("tt"):
        return Bool(True)
    if sc.try_take("ff"):
        return Bool(False)
    if sc.at("("):
        # Could open a parenthesised boolean or the left arithmetic operand
        # of a comparison; try the boolean reading first and back off.
        mark = sc.save()
        sc.take("(")
        try:
            inner = _bexp(sc)
            sc.take(")")
            return inner
        except ParseError:
            sc.restore(mark)
    left = _aexp(sc)
    op = sc.take("=", "<=", "<")
    return Cmp(op.text, left, _aexp(sc))
