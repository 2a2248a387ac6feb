"""Tokenizer and recursive-descent parser for polynomial expressions.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INT)?
    atom   := INT | NAME | "(" expr ")"

Division is allowed only by a nonzero constant.  Juxtaposition (``2x``,
``x y``, ``x(y)``) is rejected instead of being read as a product.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .ring import Poly, RingCtx


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 1, col: int = 1):
        super().__init__(f"line {line}, col {col}: {message}")
        self.message = message
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "name", "op", "punct"
    text: str
    line: int
    col: int


_OPS = set("+-*/^")
_PUNCT = set("(),;:=")


def tokenize(text: str, line: int = 1, col: int = 1, comments: bool = False) -> list[Token]:
    """Split ``text`` into tokens carrying 1-based line/column positions.

    With ``comments=True`` everything from ``#`` to the end of a line is skipped.
    """
    out: list[Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if comments and ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_col = col
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == ".":
                raise ParseError("decimal literals are not exact; write a fraction like 3/2", line, start_col)
            out.append(Token("int", text[i:j], line, start_col))
            col += j - i
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(Token("name", text[i:j], line, start_col))
            col += j - i
            i = j
        elif ch in _OPS:
            out.append(Token("op", ch, line, start_col))
            i += 1
            col += 1
        elif ch in _PUNCT:
            out.append(Token("punct", ch, line, start_col))
            i += 1
            col += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", line, start_col)
    return out


class ExprParser:
    def __init__(self, tokens: list[Token], ring: RingCtx, end: tuple[int, int] = (1, 1)):
        self.toks = tokens
        self.ring = ring
        self.i = 0
        self.end = end  # position reported for "unexpected end of input"

    def _peek(self) -> Token | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def _err(self, msg: str, tok: Token | None = None):
        tok = tok if tok is not None else self._peek()
        if tok is None:
            raise ParseError(msg, *self.end)
        raise ParseError(msg, tok.line, tok.col)

    def _take(self) -> Token:
        tok = self._peek()
        if tok is None:
            self._err("unexpected end of expression")
        self.i += 1
        return tok

    def parse(self) -> Poly:
        if not self.toks:
            self._err("empty expression")
        p = self.expr()
        tok = self._peek()
        if tok is not None:
            if tok.kind in ("int", "name") or tok.text == "(":
                self._err("implicit multiplication is not allowed; use '*'", tok)
            self._err(f"unexpected {tok.text!r}", tok)
        return p

    def expr(self) -> Poly:
        p = self.term()
        while (tok := self._peek()) is not None and tok.text in ("+", "-"):
            self.i += 1
            q = self.term()
            p = p + q if tok.text == "+" else p - q
        return p

    def term(self) -> Poly:
        p = self.unary()
        while (tok := self._peek()) is not None and tok.text in ("*", "/"):
            self.i += 1
            rhs_tok = self._peek()
            q = self.unary()
            if tok.text == "*":
                p = p * q
            else:
                if not q.is_constant():
                    self._err("division is only allowed by a constant", rhs_tok)
                c = q.constant_term()
                if not c:
                    self._err("division by zero", rhs_tok)
                p = p * (1 / c)
        return p

    def unary(self) -> Poly:
        tok = self._peek()
        if tok is not None and tok.text in ("+", "-"):
            self.i += 1
            p = self.unary()
            return -p if tok.text == "-" else p
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        tok = self._peek()
        if tok is not None and tok.text == "^":
            self.i += 1
            ex = self._take()
            if ex.kind != "int":
                self._err("exponent must be a nonnegative integer literal", ex)
            base = base ** int(ex.text)
            nxt = self._peek()
            if nxt is not None and nxt.text == "^":
                self._err("chained exponents are ambiguous; use parentheses", nxt)
        return base

    def atom(self) -> Poly:
        tok = self._take()
        if tok.kind == "int":
            return self.ring.const(Fraction(int(tok.text)))
        if tok.kind == "name":
            if tok.text not in self.ring.index:
                self._err(f"unknown identifier {tok.text!r}", tok)
            return self.ring.var(tok.text)
        if tok.text == "(":
            p = self.expr()
            close = self._peek()
            if close is None or close.text != ")":
                self._err("expected ')'", close)
            self.i += 1
            return p
        self._err(f"unexpected {tok.text!r}", tok)


def parse_poly(text: str, ring: RingCtx) -> Poly:
    toks = tokenize(text)
    return ExprParser(toks, ring, end=(1, len(text) + 1)).parse()
