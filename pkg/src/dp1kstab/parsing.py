"""Parsing divisor classes from the command line.

Two syntaxes are accepted:

* nine rationals ``b,b1,...,b8`` meaning ``b*h + sum b_i*e_i``;
* a symbolic sum such as ``-K + 1/2*E1 + 1/3*B:(h-e1)``, built from ``K``,
  ``h``, ``e1..e8`` (``E1..E8`` are the same classes) and ``B:(<class>)``.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .errors import AmbiguousForm, ParseError
from .lattice import RANK, DivClass, canonical_class, e, h

_RATIONAL = re.compile(r"[+-]?\d+(?:/\d+)?")
_TOKEN = re.compile(r"(?P<num>\d+(?:/\d+)?)|(?P<sym>[KhEe]\d*)|(?P<op>[-+*()])")


def _rational(text: str, pos: int) -> Fraction:
    text = text.strip()
    if not _RATIONAL.fullmatch(text):
        raise ParseError(f"not a rational: {text!r}", pos)
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ParseError("zero denominator", pos) from None


def _split_top_level_commas(text: str) -> list[tuple[str, int]]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append((text[start:i], start))
            start = i + 1
    parts.append((text[start:], start))
    return parts


def parse_class(text: str) -> DivClass:
    parts = _split_top_level_commas(text)
    if len(parts) > 1:
        if any(re.search(r"[KhEeB]", p) for p, _ in parts):
            raise AmbiguousForm("coordinate list mixed with symbolic terms", 0)
        if len(parts) != RANK:
            raise ParseError(f"expected {RANK} comma-separated rationals, got {len(parts)}", 0)
        return DivClass(_rational(p, pos) for p, pos in parts)
    return _Symbolic(text).parse()


class _Symbolic:
    def __init__(self, text: str):
        self.text = text
        self.tokens = []
        pos, n = 0, len(text)
        while pos < n:
            if text[pos].isspace():
                pos += 1
                continue
            if text.startswith("B:", pos):
                start = pos
                pos += 2
                while pos < n and text[pos].isspace():
                    pos += 1
                if pos >= n or text[pos] != "(":
                    raise ParseError("B: must be followed by a parenthesised class", pos)
                depth = 0
                for j in range(pos, n):
                    if text[j] == "(":
                        depth += 1
                    elif text[j] == ")":
                        depth -= 1
                        if depth == 0:
                            break
                else:
                    raise ParseError("missing ')'", pos)
                self.tokens.append(("fiber", text[pos + 1:j], pos + 1))
                pos = j + 1
                continue
            m = _TOKEN.match(text, pos)
            if not m:
                raise ParseError(f"unexpected character {text[pos]!r}", pos)
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.i = 0

    def _peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def _take(self):
        tok = self._peek()
        self.i += 1
        return tok

    def parse(self) -> DivClass:
        if not self.tokens:
            raise ParseError("empty class", 0)
        total = self._expr()
        kind, val, pos = self._peek()
        if kind is not None:
            raise ParseError(f"unexpected {val!r}", pos)
        return total

    def _expr(self) -> DivClass:
        total = DivClass.zero()
        first = True
        while True:
            kind, val, pos = self._peek()
            sign = 1
            if kind == "op" and val in "+-":
                self._take()
                sign = -1 if val == "-" else 1
            elif not first:
                return total
            total = total + sign * self._term()
            first = False

    def _term(self) -> DivClass:
        kind, val, pos = self._peek()
        coef = Fraction(1)
        if kind == "num":
            self._take()
            coef = _rational(val, pos)
            k2, v2, p2 = self._peek()
            if k2 == "op" and v2 == "*":
                self._take()
            elif k2 is None or (k2 == "op" and v2 in "+-)"):
                raise ParseError("a bare number is not a class", pos)
        return coef * self._atom()

    def _atom(self) -> DivClass:
        kind, val, pos = self._take()
        if kind == "op" and val == "(":
            inner = self._expr()
            k, v, p = self._take()
            if v != ")":
                raise ParseError("missing ')'", p)
            return inner
        if kind == "fiber":
            try:
                return parse_class(val)
            except ParseError as exc:
                raise ParseError(f"in B:(...): {exc}", pos) from None
        if kind != "sym":
            raise ParseError(f"expected a class symbol, got {val!r}", pos)
        if val == "K":
            return canonical_class()
        if val == "h":
            return h()
        if val[0] in "eE" and val[1:].isdigit():
            i = int(val[1:])
            if not 1 <= i <= 8:
                raise ParseError(f"index out of range in {val}", pos)
            return e(i)
        raise ParseError(f"unknown symbol {val!r}", pos)
