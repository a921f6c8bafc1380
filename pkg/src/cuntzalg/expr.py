"""Text form of elements.

Grammar (whitespace is insignificant)::

    element := ['+'|'-'] term (('+'|'-') term)*
    term    := [scalar ['*']] factor ('*'? factor)* | scalar
    factor  := 'S(' word ')' | 'S*(' word ')' | 'P(' word ')' | '1'
    word    := '[' (int (',' int)*)? ']'
    scalar  := rat ['i'] | 'i' | '(' scalar (('+'|'-') scalar)* ')'
    rat     := int ['/' int]

``P(w)`` is ``S(w) S*(w)``; juxtaposed factors multiply left to right.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Element, mul
from .scalar import ONE, Scalar, format_scalar
from .words import WordError, check_word

__all__ = ["ParseError", "ParsedExpression", "parse_element", "render_element", "render_word"]


class ParseError(ValueError):
    def __init__(self, message: str, text: str = "", pos: int = 0):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.line, self.column = line, col
        super().__init__(f"{message} (line {line}, column {col})")


@dataclass
class ParsedExpression:
    source: str
    element: Element
    spans: list = field(default_factory=list)


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<sstar>S\s*\*\s*(?=\())|(?P<s>S)|(?P<p>P)|(?P<i>i)|(?P<op>[-+*/()\[\],]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    end = len(text.rstrip())
    while pos < end:
        m = _TOKEN.match(text, pos)
        if not m:
            while text[pos].isspace():
                pos += 1
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        val = m.group(kind)
        toks.append((kind if kind != "op" else val, val, m.start(kind)))
        pos = m.end()
    toks.append(("eof", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, n: int):
        self.text = text
        self.n = n
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def kind(self) -> str:
        return self.toks[self.i][0]

    @property
    def pos(self) -> int:
        return self.toks[self.i][2]

    def advance(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str):
        if self.kind != kind:
            found = self.toks[self.i][1] or "end of input"
            raise ParseError(f"expected {kind!r}, found {found!r}", self.text, self.pos)
        return self.advance()

    def error(self, message: str):
        raise ParseError(message, self.text, self.pos)

    def element(self) -> ParsedExpression:
        total: dict = {}
        spans = []
        sign = 1
        if self.kind in "+-":
            sign = -1 if self.advance()[0] == "-" else 1
        while True:
            start = self.pos
            term = self.term()
            if sign < 0:
                term = -term
            for k, c in term.terms.items():
                old = total.get(k)
                total[k] = c if old is None else old + c
            spans.append((start, self.toks[self.i - 1][2] + len(self.toks[self.i - 1][1])))
            if self.kind in ("+", "-"):
                sign = -1 if self.advance()[0] == "-" else 1
                continue
            if self.kind != "eof":
                self.error(f"unexpected {self.toks[self.i][1]!r}")
            break
        return ParsedExpression(self.text, Element(self.n, total), spans)

    def term(self) -> Element:
        coeff = None
        if self.kind in ("num", "i", "("):
            if not self._is_identity_factor():
                coeff = self.scalar()
                if self.kind == "*":
                    self.advance()
        factors = []
        while self.kind in ("s", "sstar", "p") or self._is_identity_factor():
            factors.append(self.factor())
            if self.kind == "*" and self.toks[self.i + 1][0] in ("s", "sstar", "p", "num"):
                self.advance()
        if coeff is None and not factors:
            found = self.toks[self.i][1] or "end of input"
            self.error(f"expected a term, found {found!r}")
        x = Element.one(self.n)
        for f in factors:
            x = mul(x, f)
        if coeff is not None:
            x = coeff * x
        return x

    def _is_identity_factor(self) -> bool:
        # a bare "1" not continuing as a rational or imaginary literal
        if self.kind != "num" or self.toks[self.i][1] != "1":
            return False
        nxt = self.toks[self.i + 1][0]
        return nxt not in ("/", "i") and (nxt in ("s", "sstar", "p", "+", "-", "eof", "*", "num"))

    def scalar(self) -> Scalar:
        if self.kind == "(":
            self.advance()
            sign = 1
            if self.kind in "+-":
                sign = -1 if self.advance()[0] == "-" else 1
            total = sign * self.scalar()
            while self.kind in ("+", "-"):
                sign = -1 if self.advance()[0] == "-" else 1
                total = total + sign * self.scalar()
            self.expect(")")
            return total
        if self.kind == "i":
            self.advance()
            return Scalar(0, 1)
        q = self.rational()
        if self.kind == "i":
            self.advance()
            return Scalar(0, q)
        return Scalar(q)

    def rational(self) -> Fraction:
        num = int(self.expect("num")[1])
        if self.kind == "/":
            self.advance()
            at = self.pos
            den = int(self.expect("num")[1])
            if den == 0:
                raise ParseError("zero denominator", self.text, at)
            return Fraction(num, den)
        return Fraction(num)

    def factor(self) -> Element:
        kind, _, at = self.advance()
        if kind == "num":
            return Element.one(self.n)
        self.expect("(")
        w = self.word()
        self.expect(")")
        try:
            check_word(w, self.n)
        except WordError as exc:
            raise ParseError(str(exc), self.text, at) from None
        if kind == "s":
            return Element.s(w, self.n)
        if kind == "sstar":
            return Element.s_star(w, self.n)
        return Element.projection(w, self.n)

    def word(self) -> tuple:
        self.expect("[")
        letters = []
        if self.kind == "num":
            letters.append(int(self.advance()[1]))
            while self.kind == ",":
                self.advance()
                letters.append(int(self.expect("num")[1]))
        self.expect("]")
        return tuple(letters)


def parse_element(text: str, n: int) -> ParsedExpression:
    """Parse element text over the alphabet {1..n}."""
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"alphabet size must be an integer >= 2, got {n!r}")
    return _Parser(text, n).element()


def render_word(w) -> str:
    return "[" + ",".join(str(a) for a in w) + "]"


def _render_monomial(a, b) -> str:
    if not a and not b:
        return "1"
    if a == b:
        return f"P({render_word(a)})"
    parts = []
    if a:
        parts.append(f"S({render_word(a)})")
    if b:
        parts.append(f"S*({render_word(b)})")
    return " ".join(parts)


def render_element(x: Element) -> str:
    """Render terms in the element's stored (degree, beta, alpha) order.

    Pass ``normal_form(x)`` for the canonical text of x.
    """
    if not x.terms:
        return "0"
    out = []
    for (a, b), c in x.terms.items():
        negative = (c.im == 0 and c.re < 0) or (c.re == 0 and c.im < 0)
        mag = -c if negative else c
        mono = _render_monomial(a, b)
        if mag == ONE:
            body = mono
        else:
            coef = format_scalar(mag)
            if mag.re and mag.im:
                coef = f"({coef})"
            body = coef if mono == "1" else f"{coef} {mono}"
        if not out:
            out.append(f"-{body}" if negative else body)
        else:
            out.append(f" - {body}" if negative else f" + {body}")
    return "".join(out)
