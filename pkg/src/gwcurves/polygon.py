"""Convex lattice polygons encoding a toric surface with a curve class.

A polygon is stored up to translation as a counterclockwise vertex cycle
(no three consecutive vertices collinear) starting at the lexicographically
smallest vertex.  The number of boundary lattice points minus one is the
point budget: the number of generic point conditions that cut the count of
rational curves in the class down to a finite number.

Blowing up a torus-fixed point chops a corner off the polygon; depth-2
chops realize the degree shifts D -> D - 2E used by the wall-crossing
recursion.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd

from .gw import DomainError

Point = tuple[int, int]


def _cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _sub(a: Point, b: Point) -> Point:
    return (a[0] - b[0], a[1] - b[1])


def _add(a: Point, b: Point) -> Point:
    return (a[0] + b[0], a[1] + b[1])


def lattice_length(a: Point, b: Point) -> int:
    return gcd(abs(a[0] - b[0]), abs(a[1] - b[1]))


def primitive(v: Point) -> Point:
    g = gcd(abs(v[0]), abs(v[1]))
    return (v[0] // g, v[1] // g)


@dataclass(frozen=True)
class LatticePolygon:
    vertices: tuple[Point, ...]

    def __post_init__(self) -> None:
        vs = self.vertices
        if len(vs) < 3:
            raise DomainError("a polygon needs at least 3 vertices")
        for v in vs:
            if not (isinstance(v, tuple) and len(v) == 2 and all(isinstance(c, int) for c in v)):
                raise DomainError(f"bad vertex {v!r}")
        n = len(vs)
        for i in range(n):
            if _cross(vs[i], vs[(i + 1) % n], vs[(i + 2) % n]) <= 0:
                raise DomainError("vertices must be strictly convex counterclockwise")
        if min(vs) != vs[0]:
            raise DomainError("vertex cycle must start at the lexicographic minimum")

    # -- basic geometry ------------------------------------------------------

    @cached_property
    def area2(self) -> int:
        """Twice the Euclidean area (shoelace)."""
        vs = self.vertices
        return sum(
            vs[i][0] * vs[(i + 1) % len(vs)][1] - vs[(i + 1) % len(vs)][0] * vs[i][1]
            for i in range(len(vs))
        )

    def edges(self) -> list[tuple[Point, Point]]:
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def contains(self, p: Point) -> bool:
        return all(_cross(a, b, p) >= 0 for a, b in self.edges())

    def strictly_contains(self, p: Point) -> bool:
        return all(_cross(a, b, p) > 0 for a, b in self.edges())

    def on_boundary(self, p: Point) -> bool:
        return self.contains(p) and not self.strictly_contains(p)

    def segment_on_boundary(self, p: Point, q: Point) -> bool:
        """True iff the whole segment [p, q] lies inside one polygon edge."""
        for a, b in self.edges():
            if _cross(a, b, p) == 0 and _cross(a, b, q) == 0:
                lo = (min(a[0], b[0]), min(a[1], b[1]))
                hi = (max(a[0], b[0]), max(a[1], b[1]))
                if all(
                    lo[k] <= c[k] <= hi[k] for c in (p, q) for k in range(2)
                ):
                    return True
        return False

    # -- lattice point counts ------------------------------------------------

    @cached_property
    def lattice_points(self) -> tuple[Point, ...]:
        xs = [v[0] for v in self.vertices]
        ys = [v[1] for v in self.vertices]
        pts = [
            (x, y)
            for y in range(min(ys), max(ys) + 1)
            for x in range(min(xs), max(xs) + 1)
            if self.contains((x, y))
        ]
        return tuple(pts)

    @cached_property
    def interior_points(self) -> tuple[Point, ...]:
        return tuple(p for p in self.lattice_points if self.strictly_contains(p))

    def interior_count(self) -> int:
        return len(self.interior_points)

    def boundary_count(self) -> int:
        scanned = len(self.lattice_points) - len(self.interior_points)
        by_gcd = sum(lattice_length(a, b) for a, b in self.edges())
        if scanned != by_gcd:
            raise AssertionError("boundary scan disagrees with edge gcd count")
        # Pick's identity as a cross-check on all three counts.
        if self.area2 != 2 * self.interior_count() + scanned - 2:
            raise AssertionError("Pick's theorem violated")
        return scanned

    def point_budget(self) -> int:
        return self.boundary_count() - 1

    def boundary_lattice_points(self) -> list[Point]:
        """All boundary points in counterclockwise cycle order, starting at
        the first vertex."""
        out: list[Point] = []
        for a, b in self.edges():
            g = lattice_length(a, b)
            step = primitive(_sub(b, a))
            out.extend(_add(a, (step[0] * k, step[1] * k)) for k in range(g))
        return out

    # -- corner chops (blow-ups at torus-fixed points) -------------------------

    def chop_corner(self, vertex: Point, depth: int) -> "LatticePolygon":
        """Cut the corner at ``vertex``: replace it by the two points at
        lattice distance ``depth`` along the incident edges."""
        if depth < 1:
            raise DomainError("chop depth must be positive")
        vs = self.vertices
        try:
            i = vs.index(vertex)
        except ValueError:
            raise DomainError(f"{vertex} is not a vertex") from None
        u = vs[i - 1]
        w = vs[(i + 1) % len(vs)]
        if lattice_length(u, vertex) < depth or lattice_length(w, vertex) < depth:
            raise DomainError("incident edges are too short for this chop")
        du = primitive(_sub(u, vertex))
        dw = primitive(_sub(w, vertex))
        a = _add(vertex, (du[0] * depth, du[1] * depth))
        b = _add(vertex, (dw[0] * depth, dw[1] * depth))
        new = list(vs[:i]) + ([a] if a != u else []) + ([b] if b != w else []) + list(vs[i + 1 :])
        return polygon(new)

    # -- presentation ------------------------------------------------------------

    def to_json(self) -> dict:
        return {"vertices": [list(v) for v in self.vertices]}

    @classmethod
    def from_json(cls, data) -> "LatticePolygon":
        return polygon([tuple(v) for v in data["vertices"]])

    def __str__(self) -> str:
        return "conv{" + ", ".join(f"({x},{y})" for x, y in self.vertices) + "}"


def polygon(points) -> LatticePolygon:
    """Build a polygon from a counterclockwise or clockwise vertex cycle;
    rotates to the canonical start, reverses clockwise input."""
    vs = [tuple(int(c) for c in p) for p in points]
    if len(set(vs)) != len(vs):
        raise DomainError("repeated vertices")
    area2 = sum(
        vs[i][0] * vs[(i + 1) % len(vs)][1] - vs[(i + 1) % len(vs)][0] * vs[i][1]
        for i in range(len(vs))
    )
    if area2 < 0:
        vs.reverse()
    k = vs.index(min(vs))
    return LatticePolygon(tuple(vs[k:] + vs[:k]))


def convex_hull(points) -> LatticePolygon:
    """Convex hull (Andrew monotone chain) of a lattice point set."""
    pts = sorted({tuple(int(c) for c in p) for p in points})
    if len(pts) < 3:
        raise DomainError("need at least 3 points")

    def half(seq):
        chain: list[Point] = []
        for p in seq:
            while len(chain) >= 2 and _cross(chain[-2], chain[-1], p) <= 0:
                chain.pop()
            chain.append(p)
        return chain

    lower = half(pts)
    upper = half(reversed(pts))
    return polygon(lower[:-1] + upper[:-1])


# -- named polygons --------------------------------------------------------


def p2(d: int) -> LatticePolygon:
    """Degree-d curves in the projective plane: conv{(0,0), (d,0), (0,d)}."""
    if d < 1:
        raise DomainError("degree must be positive")
    return polygon([(0, 0), (d, 0), (0, d)])


def _presets() -> dict[str, LatticePolygon]:
    return {
        # first Hirzebruch surface, class 4L - 2E
        "f1_4_2e": polygon([(0, 0), (4, 0), (2, 2), (0, 2)]),
        # its blow-up at another point, class 4L - 2E - 2E'
        "blf1": polygon([(0, 0), (2, 0), (2, 2), (0, 2)]),
        # two more blow-ups: the conic polygon, class 4L - 2E - 2E' - 2E''
        "bl2f1": polygon([(0, 0), (2, 0), (0, 2)]),
    }


def preset(name: str) -> LatticePolygon:
    """Resolve a polygon name: ``p2:<d>``, ``f1_4_2e``, ``blf1``, ``bl2f1``."""
    key = name.strip().lower().replace("-", "_")
    if key.startswith("p2:"):
        try:
            return p2(int(key.split(":", 1)[1]))
        except ValueError:
            raise DomainError(f"bad degree in {name!r}") from None
    table = _presets()
    if key in table:
        return table[key]
    raise DomainError(f"unknown polygon preset {name!r}")


def preset_names() -> list[str]:
    return ["p2:<d>"] + sorted(_presets())


def sl2z_equivalent(a: LatticePolygon, b: LatticePolygon) -> bool:
    """Lattice-affine equivalence: some SL(2,Z) map plus a translation sends
    one vertex cycle onto the other."""
    ea = [_sub(q, p) for p, q in a.edges()]
    eb = [_sub(q, p) for p, q in b.edges()]
    if len(ea) != len(eb):
        return False
    n = len(ea)
    det0 = ea[0][0] * ea[1][1] - ea[0][1] * ea[1][0]
    for shift in range(n):
        f0, f1 = eb[shift], eb[(shift + 1) % n]
        # Solve M @ ea[0] = f0, M @ ea[1] = f1 over Q; accept integral det-1 M.
        num_a = f0[0] * ea[1][1] - f1[0] * ea[0][1]
        num_b = f1[0] * ea[0][0] - f0[0] * ea[1][0]
        num_c = f0[1] * ea[1][1] - f1[1] * ea[0][1]
        num_d = f1[1] * ea[0][0] - f0[1] * ea[1][0]
        if any(v % det0 for v in (num_a, num_b, num_c, num_d)):
            continue
        m = (num_a // det0, num_b // det0, num_c // det0, num_d // det0)
        if m[0] * m[3] - m[1] * m[2] != 1:
            continue
        mapped = [
            (m[0] * v[0] + m[1] * v[1], m[2] * v[0] + m[3] * v[1]) for v in ea
        ]
        if mapped == [eb[(shift + k) % n] for k in range(n)]:
            return True
    return False
