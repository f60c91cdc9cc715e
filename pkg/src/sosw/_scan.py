"""Minimal tokeniser shared by the bundled language parsers."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .core import ParseError

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INT = re.compile(r"[0-9]+")
_WS = re.compile(r"[ \t\r\n]+")


@dataclass(frozen=True)
class Token:
    kind: str  # "IDENT" | "INT" | "OP" | "KW" | "EOF"
    text: str
    line: int
    col: int


class Scanner:
    """Tokenises eagerly; parsers walk the token list with save/restore."""

    def __init__(self, text: str, operators: list, keywords=frozenset()):
        self.tokens = _tokenize(text, operators, frozenset(keywords))
        self.pos = 0

    @property
    def cur(self) -> Token:
        return self.tokens[self.pos]

    def at(self, *alts) -> bool:
        tok = self.cur
        return tok.kind in alts or (tok.kind in ("OP", "KW") and tok.text in alts)

    def try_take(self, *alts) -> Token | None:
        if self.at(*alts):
            tok = self.cur
            self.pos += 1
            return tok
        return None

    def take(self, *alts) -> Token:
        tok = self.try_take(*alts)
        if tok is None:
            expected = " or ".join(f"'{a}'" for a in alts)
            self.error(f"expected {expected}, found '{self.cur.text or 'end of input'}'")
        return tok

    def expect_eof(self):
        if self.cur.kind != "EOF":
            self.error(f"unexpected '{self.cur.text}'")

    def save(self) -> int:
        return self.pos

    def restore(self, mark: int):
        self.pos = mark

    def error(self, message: str):
        raise ParseError(message, self.cur.line, self.cur.col)


def _tokenize(text: str, operators: list, keywords: frozenset) -> list:
    # Longest operators must win, e.g. ":=" before "=".
    ops = sorted(operators, key=len, reverse=True)
    tokens = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        ws = _WS.match(text, i)
        if ws:
            chunk = ws.group()
            newlines = chunk.count("\n")
            if newlines:
                line += newlines
                col = len(chunk) - chunk.rfind("\n")
            else:
                col += len(chunk)
            i = ws.end()
            continue
        m = _IDENT.match(text, i)
        if m:
            word = m.group()
            kind = "KW" if word in keywords else "IDENT"
            tokens.append(Token(kind, word, line, col))
            col += len(word)
            i = m.end()
            continue
        m = _INT.match(text, i)
        if m:
            tokens.append(Token("INT", m.group(), line, col))
            col += len(m.group())
            i = m.end()
            continue
        for op in ops:
            if text.startswith(op, i):
                tokens.append(Token("OP", op, line, col))
                col += len(op)
                i += len(op)
                break
        else:
            raise ParseError(f"unexpected character '{text[i]}'", line, col)
    tokens.append(Token("EOF", "", line, col))
    return tokens
