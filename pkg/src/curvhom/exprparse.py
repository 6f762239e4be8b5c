"""Tiny parser for polynomial expressions typed into scenario files.

Grammar (whitespace ignored)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*        # '/' only by a rational literal
    factor := ('+' | '-') factor | atom ('^' integer)?
    atom   := integer | name | '(' expr ')'

Names are identifiers; ``t``-style parameters are just more variables.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .poly import Generator, PolyElement, TruncatedPolyAlgebra

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")

# sparse polynomial: {exponent-dict as sorted tuple of (name, e): coef}
Poly = Dict[Tuple[Tuple[str, int], ...], Fraction]


class ParseError(ValueError):
    pass


def _tokens(text: str) -> List[str]:
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        tok = m.group(1) or m.group(2) or m.group(3)
        out.append("^" if tok == "**" else tok)
        pos = m.end()
    return out


def _mul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            d = dict(ka)
            for n, e in kb:
                d[n] = d.get(n, 0) + e
            k = tuple(sorted(d.items()))
            out[k] = out.get(k, 0) + va * vb
    return {k: v for k, v in out.items() if v}


def _add(a: Poly, b: Poly, sign: int = 1) -> Poly:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + sign * v
    return {k: v for k, v in out.items() if v}


def _const(c) -> Poly:
    c = Fraction(c)
    return {(): c} if c else {}


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokens(text)
        self.i = 0

    def peek(self) -> Optional[str]:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expect: Optional[str] = None) -> str:
        tok = self.peek()
        if tok is None or (expect is not None and tok != expect):
            raise ParseError(f"expected {expect or 'token'}, got {tok!r}")
        self.i += 1
        return tok

    def parse(self) -> Poly:
        if not self.toks:
            raise ParseError("empty expression")
        p = self.expr()
        if self.peek() is not None:
            raise ParseError(f"trailing input at {self.peek()!r}")
        return p

    def expr(self) -> Poly:
        p = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            p = _add(p, self.term(), 1 if op == "+" else -1)
        return p

    def term(self) -> Poly:
        p = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            q = self.factor()
            if op == "*":
                p = _mul(p, q)
            else:
                if set(q) - {()} or not q:
                    raise ParseError("division only by nonzero rational constants")
                p = {k: v / q[()] for k, v in p.items()}
        return p

    def factor(self) -> Poly:
        tok = self.peek()
        if tok in ("+", "-"):
            self.take()
            f = self.factor()
            return f if tok == "+" else {k: -v for k, v in f.items()}
        base = self.atom()
        if self.peek() == "^":
            self.take()
            e = self.take()
            if not e.isdigit():
                raise ParseError("exponent must be a non-negative integer")
            out = _const(1)
            for _ in range(int(e)):
                out = _mul(out, base)
            return out
        return base

    def atom(self) -> Poly:
        tok = self.take()
        if tok.isdigit():
            return _const(int(tok))
        if tok == "(":
            p = self.expr()
            self.take(")")
            return p
        if re.match(r"[A-Za-z_]", tok):
            return {((tok, 1),): Fraction(1)}
        raise ParseError(f"unexpected token {tok!r}")


def parse_poly(text: str) -> Poly:
    return _Parser(text).parse()


def variables(text: str) -> List[str]:
    """Variable names with a nonzero occurrence, in order of first appearance."""
    used = {n for k in parse_poly(text) for n, _ in k}
    order: List[str] = []
    for t in _tokens(text):
        if t in used and t not in order:
            order.append(t)
    return order


def to_element(text: str, alg: Optional[TruncatedPolyAlgebra] = None,
               names: Optional[Sequence[str]] = None, trunc: int = 8) -> PolyElement:
    """Parse ``text`` into an element of ``alg`` (built from the variables if absent)."""
    p = parse_poly(text)
    if alg is None:
        if names is None:
            names = sorted({n for k in p for n, _ in k})
        alg = TruncatedPolyAlgebra([Generator(n) for n in names], trunc)
    terms = {}
    for k, v in p.items():
        m = [0] * alg.ngens
        for n, e in k:
            if n not in alg.index:
                raise ParseError(f"unknown variable {n!r}")
            m[alg.index[n]] += e
        terms[tuple(m)] = terms.get(tuple(m), 0) + v
    return PolyElement(alg, terms)
