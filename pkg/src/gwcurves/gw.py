"""Exact arithmetic in the Grothendieck-Witt ring of the rational numbers.

A nondegenerate symmetric bilinear form over Q diagonalizes as an orthogonal
sum of rank-one forms <a>, and <a> only depends on the square class of a, so
a class is stored canonically as a squarefree integer.  Elements here are
*virtual* forms: integer-weighted sums of square classes with weights of
either sign, so that rank-zero differences such as 2<1> - (<2> + <2c>) are
first-class values.

Equality in GW(Q) is decided by Hasse-Minkowski: after trading each negative
term -<a> for <-a> - h (hyperbolic padding), two effective forms of equal
rank are isometric iff their signatures, discriminants and Hasse invariants
agree at the real place, at 2 and at every odd prime dividing a stored
representative.

The hyperbolic plane h = <1> + <-1> is not a separate primitive; the
pretty-printer extracts h-multiples greedily (min of the <1> and <-1>
coefficients), which is how values like ``190h + 240*<1>`` are displayed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Mapping, Union

from sympy import factorint, isprime

Rational = Union[int, Fraction]

#: The real place of Q.  Finite places are given as the prime itself.
REAL_PLACE = None
Place = Union[int, None]


class DomainError(ValueError):
    """Raised when an operation is applied outside its domain."""


def _as_fraction(a: Rational) -> Fraction:
    if isinstance(a, bool) or not isinstance(a, (int, Fraction)):
        raise DomainError(f"expected an exact rational, got {a!r}")
    return Fraction(a)


@lru_cache(maxsize=None)
def _squarefree_part(n: int) -> int:
    """Squarefree part of a nonzero integer (sign preserved)."""
    out = -1 if n < 0 else 1
    for p, e in factorint(abs(n)).items():
        if e % 2:
            out *= p
    return out


def square_class(a: Rational) -> int:
    """Canonical squarefree integer representing a in Q*/(Q*)^2.

    square_class(a * t**2) == square_class(a) for every nonzero rational t;
    a numerator/denominator pair reduces through n/d ~ n*d.
    """
    a = _as_fraction(a)
    if a == 0:
        raise DomainError("zero has no square class")
    return _squarefree_part(a.numerator * a.denominator)


@lru_cache(maxsize=None)
def _odd_prime_divisors(c: int) -> tuple[int, ...]:
    return tuple(p for p in factorint(abs(c)) if p != 2)


def _legendre(u: int, p: int) -> int:
    r = pow(u % p, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def _split(n: int, p: int) -> tuple[int, int]:
    """n = p**v * u with p not dividing u; returns (v, u)."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


@lru_cache(maxsize=None)
def _hilbert_int(a: int, b: int, place: Place) -> int:
    if place is REAL_PLACE:
        return -1 if a < 0 and b < 0 else 1
    p = place
    if p == 2:
        al, u = _split(a, 2)
        bl, w = _split(b, 2)
        e = ((u - 1) // 2) * ((w - 1) // 2)
        e += al * ((w * w - 1) // 8) + bl * ((u * u - 1) // 8)
        return -1 if e % 2 else 1
    al, u = _split(a, p)
    bl, w = _split(b, p)
    sym = _legendre(-1, p) ** (al * bl) if al * bl % 2 else 1
    if bl % 2:
        sym *= _legendre(u, p)
    if al % 2:
        sym *= _legendre(w, p)
    return sym


def hilbert_symbol(a: Rational, b: Rational, place: Place = REAL_PLACE) -> int:
    """Hilbert symbol (a, b) at a place of Q: +1 iff z^2 = a x^2 + b y^2 has
    a nontrivial solution in the completion, -1 otherwise.

    ``place`` is a prime number or REAL_PLACE (None).
    """
    if place is not REAL_PLACE and not (isinstance(place, int) and isprime(place)):
        raise DomainError(f"not a place of Q: {place!r}")
    return _hilbert_int(square_class(a), square_class(b), place)


def _term_string(coeff: int, body: str, first: bool) -> str:
    sign = "-" if coeff < 0 else ("" if first else "+")
    mag = abs(coeff)
    if body == "h":
        text = "h" if mag == 1 else f"{mag}h"
    else:
        text = body if mag == 1 else f"{mag}{'*' if body[0] == '<' else ''}{body}"
    if first:
        return f"{sign}{text}"
    return f" {sign} {text}"


@dataclass(frozen=True)
class GWElement:
    """A virtual diagonal form: map square class -> nonzero integer weight.

    Stored as a tuple of (class, coefficient) pairs with classes strictly
    ascending.  Structural equality (==) compares stored terms; use
    ``is_isometric`` / ``gw_equal`` for equality in GW(Q).
    """

    terms: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        last = None
        for c, n in self.terms:
            if n == 0:
                raise DomainError("zero coefficients must be pruned")
            if c == 0 or c != _squarefree_part(c):
                raise DomainError(f"{c} is not a squarefree class representative")
            if last is not None and c <= last:
                raise DomainError("classes must be strictly ascending")
            last = c

    @classmethod
    def from_dict(cls, d: Mapping[int, int]) -> "GWElement":
        return cls(tuple(sorted((c, n) for c, n in d.items() if n)))

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    def coeff(self, c: int) -> int:
        return dict(self.terms).get(square_class(c), 0)

    # -- ring structure -------------------------------------------------

    def __add__(self, other: "GWElement") -> "GWElement":
        d = self.as_dict()
        for c, n in other.terms:
            d[c] = d.get(c, 0) + n
        return GWElement.from_dict(d)

    def __neg__(self) -> "GWElement":
        return GWElement(tuple((c, -n) for c, n in self.terms))

    def __sub__(self, other: "GWElement") -> "GWElement":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, GWElement):
            d: dict[int, int] = {}
            for c1, n1 in self.terms:
                for c2, n2 in other.terms:
                    c = _squarefree_part(c1 * c2)
                    d[c] = d.get(c, 0) + n1 * n2
            return GWElement.from_dict(d)
        if isinstance(other, int):
            return GWElement(tuple((c, n * other) for c, n in self.terms)) if other else ZERO
        return NotImplemented

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- invariants ------------------------------------------------------

    def rank(self) -> int:
        return sum(n for _, n in self.terms)

    def signature(self) -> int:
        return sum(n if c > 0 else -n for c, n in self.terms)

    def is_effective(self) -> bool:
        return all(n > 0 for _, n in self.terms)

    def discriminant(self) -> int:
        if not self.is_effective():
            raise DomainError("discriminant needs an effective form")
        d = 1
        for c, n in self.terms:
            if n % 2:
                d = _squarefree_part(d * c)
        return d

    def hasse_invariant(self, place: Place) -> int:
        """Product of pairwise Hilbert symbols of the diagonal entries."""
        if not self.is_effective():
            raise DomainError("Hasse invariant needs an effective form")
        out = 1
        for i, (c, n) in enumerate(self.terms):
            if comb(n, 2) % 2:
                out *= hilbert_symbol(c, c, place)
            for c2, n2 in self.terms[i + 1 :]:
                if (n * n2) % 2:
                    out *= hilbert_symbol(c, c2, place)
        return out

    def _effectivized(self) -> tuple["GWElement", int]:
        """An effective form isometric to self + m*h, with the m used.

        Uses -<a> + h = <-a>, so each negative weight trades sign of its
        class at the cost of one hyperbolic summand.
        """
        d: dict[int, int] = {}
        m = 0
        for c, n in self.terms:
            if n > 0:
                d[c] = d.get(c, 0) + n
            else:
                d[-c] = d.get(-c, 0) - n
                m -= n
        return GWElement.from_dict(d), m

    def is_isometric(self, other: "GWElement") -> bool:
        return gw_equal(self, other)

    # -- presentation ----------------------------------------------------

    def __str__(self) -> str:
        return format_gw(self)

    def to_json(self) -> dict:
        return {"terms": [{"class": c, "coeff": n} for c, n in self.terms]}

    @classmethod
    def from_json(cls, data: Mapping) -> "GWElement":
        return cls.from_dict({t["class"]: t["coeff"] for t in data["terms"]})


ZERO = GWElement()


def form(*classes: Rational) -> GWElement:
    """Diagonal form <a1> + <a2> + ... with each entry reduced mod squares."""
    d: dict[int, int] = {}
    for a in classes:
        c = square_class(a)
        d[c] = d.get(c, 0) + 1
    return GWElement.from_dict(d)


ONE = form(1)
H = form(1, -1)


def gw_add(q1: GWElement, q2: GWElement) -> GWElement:
    return q1 + q2


def gw_mul(q1: GWElement, q2: GWElement) -> GWElement:
    return q1 * q2


def hyperbolic_part(q: GWElement) -> tuple[int, GWElement]:
    """Greedy split q = m*h + rest over the stored +/- class pairs.

    For each class pair {a, -a} the extractable count is the signed minimum
    of the two stored weights.  Exact on the span of <1>, <-1>; elsewhere it
    only extracts what is visible in the stored representation.
    """
    d = q.as_dict()
    m = 0
    for c in sorted(k for k in d if k > 0):
        n1, n2 = d.get(c, 0), d.get(-c, 0)
        if n1 > 0 and n2 > 0:
            k = min(n1, n2)
        elif n1 < 0 and n2 < 0:
            k = max(n1, n2)
        else:
            continue
        d[c] = n1 - k
        d[-c] = n2 - k
        m += k
    return m, GWElement.from_dict(d)


def visible_h_multiples(q: GWElement) -> tuple[int, GWElement]:
    """Greedy split q = m*h + rest using only the <1>, <-1> coefficients."""
    d = q.as_dict()
    n1, n2 = d.get(1, 0), d.get(-1, 0)
    if n1 > 0 and n2 > 0:
        m = min(n1, n2)
    elif n1 < 0 and n2 < 0:
        m = max(n1, n2)
    else:
        return 0, q
    d[1] = n1 - m
    d[-1] = n2 - m
    return m, GWElement.from_dict(d)


def format_gw(q: GWElement, unicode: bool = False) -> str:
    """Canonical display, e.g. ``2h + 8*<1> + <-3>``.

    H-multiples visible in the <1>, <-1> coefficients are extracted greedily
    and printed first; remaining classes follow ordered by (|class|, sign).
    """
    m, rest = visible_h_multiples(q)
    pieces: list[tuple[int, str]] = []
    if m:
        pieces.append((m, "h"))
    for c, n in sorted(rest.terms, key=lambda t: (abs(t[0]), t[0] < 0)):
        pieces.append((n, f"<{c}>"))
    if not pieces:
        return "0"
    out = "".join(_term_string(n, body, i == 0) for i, (n, body) in enumerate(pieces))
    if unicode:
        out = out.replace("<", "⟨").replace(">", "⟩").replace("*", "·")
    return out


def gw_equal(q1: GWElement, q2: GWElement) -> bool:
    """Decide q1 == q2 in GW(Q) by local invariants.

    Rank, then (after hyperbolic padding to a common effective shape)
    signature, discriminant and Hasse invariants at 2 and at the odd primes
    dividing any stored class; all other finite places are automatically +1.
    """
    if q1.rank() != q2.rank():
        return False
    e1, m1 = q1._effectivized()
    e2, m2 = q2._effectivized()
    pad = max(m1, m2)
    if pad > m1:
        e1 = e1 + (pad - m1) * H
    if pad > m2:
        e2 = e2 + (pad - m2) * H
    if e1.signature() != e2.signature():
        return False
    if e1.discriminant() != e2.discriminant():
        return False
    places: set[Place] = {REAL_PLACE, 2}
    for q in (e1, e2):
        for c, _ in q.terms:
            places.update(_odd_prime_divisors(c))
    return all(e1.hasse_invariant(v) == e2.hasse_invariant(v) for v in places)


# -- trace forms from quadratic extensions -------------------------------


@dataclass(frozen=True)
class QuadraticElement:
    """A nonzero element a + b*sqrt(c) of the quadratic extension Q(sqrt(c)).

    c must be a nonsquare; it is stored as its squarefree representative.
    """

    c: int
    a: Fraction
    b: Fraction

    def __post_init__(self) -> None:
        if self.c != _squarefree_part(self.c) or self.c in (0, 1):
            raise DomainError(f"{self.c} does not define a quadratic extension")
        if self.a == 0 and self.b == 0:
            raise DomainError("the zero element has no trace form")

    @classmethod
    def of(cls, c: Rational, a: Rational, b: Rational = 0) -> "QuadraticElement":
        c = _as_fraction(c)
        if c == 0:
            raise DomainError("c must be nonzero")
        return cls(square_class(c), _as_fraction(a), _as_fraction(b))

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.c

    def trace_form(self) -> GWElement:
        """Pushforward of <alpha> along the field trace of Q(sqrt(c))/Q.

        The Gram matrix of (x, y) -> tr(alpha * x * y) on the basis
        {1, sqrt(c)} is [[2a, 2bc], [2bc, 2ac]]; diagonalizing gives
        <2a> + <2a * det> when a != 0 and the hyperbolic plane when a = 0.
        """
        if self.a == 0:
            return H
        det = 4 * self.c * self.norm()
        return form(2 * self.a) + form(2 * self.a * det)


def trace_form(c: Rational, a: Rational, b: Rational = 0) -> GWElement:
    return QuadraticElement.of(c, a, b).trace_form()


def beta(c: Rational) -> GWElement:
    """Trace of <1> from Q(sqrt(c)): the rank-2 form <2> + <2c>.

    Also meaningful for square c, where it is isometric to 2<1> (the split
    algebra Q x Q case)."""
    sc = square_class(c)
    return form(2) + form(2 * sc)


def delta(c: Rational) -> GWElement:
    """Wall-crossing defect 2<1> - beta(c): rank 0, signature 2 for c < 0."""
    return 2 * ONE - beta(c)


def random_gw(rng, size: int = 4, bound: int = 30) -> GWElement:
    """Small random virtual form, for property tests."""
    out = ZERO
    for _ in range(rng.randrange(size + 1)):
        a = rng.choice([-1, 1]) * rng.randrange(1, bound)
        out = out + rng.choice([-2, -1, 1, 2]) * form(a)
    return out

