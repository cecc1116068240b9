"""Recursive-descent parser for polynomial expressions in x1..x4.

Grammar::

    expr     := term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := '-' factor | base ('^' integer)?
    base     := rational | var | '(' expr ')'
    rational := integer ('/' positive-integer)?
    var      := 'x1' | 'x2' | 'x3' | 'x4'

Unary minus binds looser than '^', so ``-x1^2`` is ``-(x1^2)``.
Multiplication must be written out: ``2x1`` is an error. Whitespace between
tokens is ignored. Errors carry the byte offset of the offending token in
the UTF-8 encoding of the input.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError
from .mpoly import MPoly

__all__ = ["parse_poly", "format_poly", "ParseError"]

_INT = "integer"
_VAR = "variable"
_END = "end of input"
_FACTOR_START = frozenset({"-", "(", _INT, _VAR})
_PUNCT = set("+-*/^()")


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    offset: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    i, byte = 0, 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            byte += len(ch.encode())
            continue
        start_byte = byte
        if ch in _PUNCT:
            toks.append(_Tok(ch, ch, start_byte))
            i += 1
            byte += 1
        elif "0" <= ch <= "9":
            j = i
            while j < n and "0" <= text[j] <= "9":
                j += 1
            toks.append(_Tok(_INT, text[i:j], start_byte))
            byte += j - i
            i = j
        elif ch == "x":
            j = i + 1
            while j < n and "0" <= text[j] <= "9":
                j += 1
            toks.append(_Tok(_VAR, text[i:j], start_byte))
            byte += j - i
            i = j
        else:
            toks.append(_Tok("invalid", ch, start_byte))
            i += 1
            byte += len(ch.encode())
    toks.append(_Tok(_END, "", byte))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.pos = 0
        self.depth = 0
        # tokens that could have extended the most recently completed production
        self.cont: set[str] = set()

    @property
    def tok(self) -> _Tok:
        return self.toks[self.pos]

    def advance(self) -> _Tok:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def fail(self, expected, message: str | None = None):
        t = self.tok
        if message is None:
            what = "end of input" if t.kind == _END else repr(t.text)
            message = f"unexpected {what}"
        raise ParseError(message, t.offset, frozenset(expected))

    def closers(self) -> set[str]:
        return {")"} if self.depth else {_END}

    def parse(self) -> MPoly:
        p = self.expr()
        if self.tok.kind != _END:
            self.fail(self.cont | {"+", "-", "*"} | self.closers())
        return p

    def expr(self) -> MPoly:
        p = self.term()
        while self.tok.kind in ("+", "-"):
            op = self.advance().kind
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> MPoly:
        p = self.factor()
        while self.tok.kind == "*":
            self.advance()
            p = p * self.factor()
        return p

    def factor(self) -> MPoly:
        if self.tok.kind == "-":
            self.advance()
            return -self.factor()
        base, cont = self.base()
        if self.tok.kind == "^":
            self.advance()
            t = self.tok
            if t.kind != _INT:
                self.fail({_INT}, "exponent must be a non-negative integer")
            self.advance()
            self.cont = set()
            return base ** int(t.text)
        self.cont = cont | {"^"}
        return base

    def base(self) -> tuple[MPoly, set[str]]:
        t = self.tok
        if t.kind == _INT:
            self.advance()
            num = int(t.text)
            if self.tok.kind == "/":
                self.advance()
                d = self.tok
                if d.kind != _INT or int(d.text) == 0:
                    self.fail({"positive integer"}, "denominator must be a positive integer")
                self.advance()
                return MPoly.const(Fraction(num, int(d.text))), set()
            return MPoly.const(num), {"/"}
        if t.kind == _VAR:
            if t.text not in ("x1", "x2", "x3", "x4"):
                self.fail({"x1", "x2", "x3", "x4"}, f"unknown variable {t.text!r}")
            self.advance()
            return MPoly.var(int(t.text[1])), set()
        if t.kind == "(":
            self.advance()
            self.depth += 1
            p = self.expr()
            if self.tok.kind != ")":
                self.fail(self.cont | {"+", "-", "*", ")"})
            self.advance()
            self.depth -= 1
            return p, set()
        self.fail(_FACTOR_START)


def parse_poly(text: str) -> MPoly:
    """Parse an expression into an exact :class:`MPoly`; raises
    :class:`ParseError` with a byte offset and the expected tokens."""
    return _Parser(text).parse()


def format_poly(p: MPoly) -> str:
    """Canonical text form; ``parse_poly(format_poly(p)) == p``."""
    return str(p)
