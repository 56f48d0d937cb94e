"""Parser for the calculator surface syntax.

Grammar (ASCII; whitespace free between tokens):

    element := term (("+" | "-") term)*
    term    := [uint ["*"]] factor ("*" factor)*
             | uint                      -- bare integer, meaning n*<1>
    factor  := "<" rational ">" | "h" | "b" uint
             | "tr(" rational ";" rational ["," rational] ")"

``tr(c; a[, b])`` evaluates the trace form of a + b*sqrt(c) from Q(sqrt(c)).
Parsing returns a BetaPolynomial; constants can be narrowed with
``constant_value``.  Errors carry the offending position.
"""

from __future__ import annotations

from fractions import Fraction

from .betapoly import POLY_ZERO, BetaPolynomial, beta_symbol
from .gw import GWElement, H, ONE, ZERO, form, trace_form


class ExprError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, token: str) -> bool:
        self.skip_ws()
        if self.text.startswith(token, self.pos):
            self.pos += len(token)
            return True
        return False

    def expect(self, token: str) -> None:
        if not self.take(token):
            raise ExprError(f"expected {token!r}", self.pos)

    def uint(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ExprError("expected an integer", start)
        return int(self.text[start : self.pos])

    def rational(self) -> Fraction:
        self.skip_ws()
        start = self.pos
        sign = -1 if self.take("-") else 1
        num = self.uint()
        den = 1
        if self.take("/"):
            den = self.uint()
            if den == 0:
                raise ExprError("zero denominator", start)
        return Fraction(sign * num, den)

    def done(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)


def _factor(sc: _Scanner) -> BetaPolynomial:
    start = sc.pos
    if sc.take("<"):
        a = sc.rational()
        if a == 0:
            raise ExprError("zero inside <...>", start)
        sc.expect(">")
        return BetaPolynomial.constant(form(a))
    if sc.take("tr("):
        c = sc.rational()
        sc.expect(";")
        a = sc.rational()
        b = Fraction(0)
        if sc.take(","):
            b = sc.rational()
        sc.expect(")")
        return BetaPolynomial.constant(trace_form(c, a, b))
    if sc.take("h"):
        return BetaPolynomial.constant(H)
    if sc.take("b"):
        idx = sc.uint()
        if idx == 0:
            raise ExprError("symbol index must be positive", start)
        return beta_symbol(idx)
    raise ExprError("expected a factor", sc.pos)


def _poly_product(a: BetaPolynomial, b: BetaPolynomial) -> BetaPolynomial:
    """Product of parsed terms; symbol sets must stay disjoint (multilinear)."""
    out: dict = {}
    for m1, g1 in a.monomials:
        for m2, g2 in b.monomials:
            if set(m1) & set(m2):
                raise ExprError(f"repeated symbol b{min(set(m1) & set(m2))}", 0)
            key = tuple(sorted(m1 + m2))
            out[key] = out.get(key, ZERO) + g1 * g2
    return BetaPolynomial.from_dict(out)


def _term(sc: _Scanner) -> BetaPolynomial:
    coeff = 1
    sc.skip_ws()
    if sc.peek().isdigit():
        coeff = sc.uint()
        sc.take("*")
        if sc.done() or sc.peek() in "+-":
            return BetaPolynomial.constant(coeff * ONE)
    out = _factor(sc)
    while sc.take("*"):
        out = _poly_product(out, _factor(sc))
    if coeff != 1:
        out = out.scale(coeff * ONE)
    return out


def parse_expression(text: str) -> BetaPolynomial:
    sc = _Scanner(text)
    total = POLY_ZERO
    negate = sc.take("-")
    while True:
        term = _term(sc)
        total = total + (-term if negate else term)
        if sc.done():
            return total
        if sc.take("+"):
            negate = False
        elif sc.take("-"):
            negate = True
        else:
            raise ExprError("expected '+', '-' or end of input", sc.pos)


def parse_gw(text: str) -> GWElement:
    """Parse an expression that must be constant (no b symbols)."""
    poly = parse_expression(text)
    return poly.constant_value()
