"""Rational tropical curves through vertically stretched point configurations.

Curves of degree Delta through #(boundary lattice points) - 1 stretched
points are enumerated through their dual subdivisions: a lattice path that
increases strictly under the order lambda(x, y) = (y, x) lexicographic (the
limit of y + eps*x) is completed on each side of the polygon by peeling, at
the first vertex turning toward that side, either the turn triangle or the
parallelogram obtained by reflecting the turn vertex.  Gluing a positive and
a negative completion tiles the polygon with triangles and parallelograms;
the result is kept when its dual graph is a connected tree whose unbounded
edges all have weight one (an irreducible rational curve), and dropped with
a counted diagnostic otherwise.

Each trivalent vertex, dual to a triangle with edge lattice lengths
l1, l2, l3, twice-area A2 and I interior lattice points, carries the
multiplicity

    <(-1)^I * l1*l2*l3> + (A2 - 1)/2 * h   if all li are odd,
    (A2 / 2) * h                           otherwise,

and a curve multiplies the contributions of its trivalent vertices.  The
rank of the product is the classical complex multiplicity, the signature the
real (signed) one.
"""

from __future__ import annotations

import itertools
import logging
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import gcd

from .gw import GWElement, ONE, form, gw_equal
from .polygon import LatticePolygon, Point, lattice_length, _add, _sub

logger = logging.getLogger(__name__)


class InternalInvariantError(AssertionError):
    """A structural impossibility (bad tiling) rather than a filtered curve."""


def lambda_key(p: Point) -> tuple[int, int]:
    """The stretched order: compare by height, then abscissa."""
    return (p[1], p[0])


# -- cells -------------------------------------------------------------------


@dataclass(frozen=True)
class Cell:
    kind: str  # "triangle" | "parallelogram"
    vertices: tuple[Point, ...]  # sorted

    def area2(self) -> int:
        if self.kind == "parallelogram":
            return 2 * _par_area(self)
        a, b, c = self.vertices
        return abs((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))

    def to_json(self) -> dict:
        return {"kind": self.kind, "vertices": [list(v) for v in self.vertices]}


def triangle(a: Point, b: Point, c: Point) -> Cell:
    pts = tuple(sorted((a, b, c)))
    if _orient(*pts) == 0:
        raise InternalInvariantError("degenerate triangle")
    return Cell("triangle", pts)


def parallelogram(a: Point, b: Point, c: Point, d: Point) -> Cell:
    cell = Cell("parallelogram", tuple(sorted((a, b, c, d))))
    _par_cycle(cell)  # validates
    return cell


def _orient(a: Point, b: Point, c: Point) -> int:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _par_cycle(cell: Cell) -> tuple[Point, Point, Point, Point]:
    """Vertices in cycle order p, p+u, p+u+v, p+v."""
    p, q, r, s = cell.vertices
    for far, m1, m2 in ((q, r, s), (r, q, s), (s, q, r)):
        if _add(p, far) == _add(m1, m2):
            if _orient(p, m1, m2) == 0:
                break
            return (p, m1, far, m2)
    raise InternalInvariantError(f"not a parallelogram: {cell.vertices}")


def _par_area(cell: Cell) -> int:
    p, a, _, b = _par_cycle(cell)
    return abs(_orient(p, a, b))


def cell_sides(cell: Cell) -> list[tuple[Point, Point]]:
    if cell.kind == "triangle":
        a, b, c = cell.vertices
        return [tuple(sorted((a, b))), tuple(sorted((a, c))), tuple(sorted((b, c)))]
    p, q, r, s = _par_cycle(cell)
    return [
        tuple(sorted((p, q))),
        tuple(sorted((q, r))),
        tuple(sorted((r, s))),
        tuple(sorted((s, p))),
    ]


def parallelogram_opposite(cell: Cell, side: tuple[Point, Point]) -> tuple[Point, Point]:
    p, q, r, s = _par_cycle(cell)
    pairs = {
        tuple(sorted((p, q))): tuple(sorted((s, r))),
        tuple(sorted((s, r))): tuple(sorted((p, q))),
        tuple(sorted((q, r))): tuple(sorted((p, s))),
        tuple(sorted((p, s))): tuple(sorted((q, r))),
    }
    return pairs[side]


# -- motivic vertex and curve multiplicities -----------------------------------


def triangle_edge_lengths(cell: Cell) -> tuple[int, int, int]:
    a, b, c = cell.vertices
    return (lattice_length(a, b), lattice_length(a, c), lattice_length(b, c))


def triangle_interior_count(cell: Cell) -> int:
    # Pick: 2*Area = 2*I + B - 2 with B the boundary lattice points.
    boundary = sum(triangle_edge_lengths(cell))
    i2 = cell.area2() - boundary + 2
    if i2 < 0 or i2 % 2:
        raise InternalInvariantError(f"Pick count failed on {cell.vertices}")
    return i2 // 2


def vertex_mult(cell: Cell) -> GWElement:
    """Motivic multiplicity of the trivalent vertex dual to a triangle."""
    if cell.kind != "triangle":
        raise InternalInvariantError("vertex multiplicity needs a triangle")
    l1, l2, l3 = triangle_edge_lengths(cell)
    a2 = cell.area2()
    if l1 % 2 and l2 % 2 and l3 % 2:
        sign = -1 if triangle_interior_count(cell) % 2 else 1
        return form(sign * l1 * l2 * l3) + ((a2 - 1) // 2) * form(1, -1)
    return (a2 // 2) * form(1, -1)


@dataclass(frozen=True)
class MultiplicityBundle:
    motivic: GWElement
    complex: int
    welschinger: int

    def to_json(self) -> dict:
        return {
            "motivic": self.motivic.to_json(),
            "complex": self.complex,
            "welschinger": self.welschinger,
        }


@dataclass(frozen=True)
class MarkedSubdivision:
    path: tuple[Point, ...]
    cells: tuple[Cell, ...]

    def triangles(self) -> list[Cell]:
        return [c for c in self.cells if c.kind == "triangle"]

    def to_json(self) -> dict:
        return {
            "path": [list(p) for p in self.path],
            "cells": [c.to_json() for c in self.cells],
        }


def curve_mult(sub: MarkedSubdivision) -> MultiplicityBundle:
    """Product of the vertex multiplicities over the trivalent vertices."""
    motivic = ONE
    complex_mult = 1
    welschinger = 1
    for t in sub.triangles():
        m = vertex_mult(t)
        motivic = motivic * m
        complex_mult *= t.area2()
        welschinger *= m.signature()
    if motivic.rank() != complex_mult or motivic.signature() != welschinger:
        raise InternalInvariantError("multiplicity factorization failed")
    return MultiplicityBundle(motivic, complex_mult, welschinger)


# -- lattice paths and completions -----------------------------------------------


def enumerate_paths(poly: LatticePolygon):
    """All strictly lambda-increasing point sequences of step count equal to
    the point budget, from the lambda-minimal to the lambda-maximal vertex."""
    pts = sorted(poly.lattice_points, key=lambda_key)
    n = poly.point_budget()
    first, last = pts[0], pts[-1]
    middle = pts[1:-1]
    if n < 1 or n - 1 > len(middle):
        return
    for chosen in itertools.combinations(middle, n - 1):
        yield (first,) + chosen + (last,)


def _shoelace(seq) -> int:
    return sum(
        seq[i][0] * seq[i + 1][1] - seq[i + 1][0] * seq[i][1]
        for i in range(len(seq) - 1)
    )


def _arc_shoelaces(poly: LatticePolygon) -> tuple[int, int]:
    """Shoelace sums of the two boundary arcs from the lambda-min point to
    the lambda-max point: (left arc, right arc).

    Walking the counterclockwise boundary from the minimum reaches the
    maximum along the right-hand side of any increasing path.
    """
    bd = poly.boundary_lattice_points()
    lo = min(bd, key=lambda_key)
    hi = max(bd, key=lambda_key)
    k = bd.index(lo)
    bd = bd[k:] + bd[:k]
    j = bd.index(hi)
    right = bd[: j + 1]
    left = [lo] + bd[: j - 1 : -1]
    return _shoelace(left), _shoelace(right)


def complete_path(path, side: int, poly: LatticePolygon):
    """All completion cell sets between ``path`` and the boundary arc on the
    given side (+1: left of travel, -1: right).

    At the first vertex where the path turns toward the side, branch on
    peeling the turn triangle (vertex deleted) and, when the reflected point
    stays in the polygon, the turn parallelogram (vertex reflected).  A path
    with no remaining area on that side contributes the empty set; a path
    with area but no turn toward the side is a dead end.
    """
    if side not in (1, -1):
        raise ValueError("side must be +1 or -1")
    s_left, s_right = _arc_shoelaces(poly)
    cache: dict[tuple, list[tuple[Cell, ...]]] = {}

    def area2_to_side(p) -> int:
        s = _shoelace(p)
        return s - s_left if side == 1 else s_right - s

    def rec(p) -> list[tuple[Cell, ...]]:
        hit = cache.get(p)
        if hit is not None:
            return hit
        area = area2_to_side(p)
        if area < 0:
            raise InternalInvariantError("path escaped its completion region")
        if area == 0:
            cache[p] = [()]
            return [()]
        turn = None
        for i in range(1, len(p) - 1):
            c = _orient(p[i - 1], p[i], p[i + 1])
            if c != 0 and (1 if c > 0 else -1) == side:
                turn = i
                break
        if turn is None:
            cache[p] = []
            return []
        i = turn
        out: list[tuple[Cell, ...]] = []
        tri = triangle(p[i - 1], p[i], p[i + 1])
        for rest in rec(p[:i] + p[i + 1 :]):
            out.append(rest + (tri,))
        reflected = _sub(_add(p[i - 1], p[i + 1]), p[i])
        if poly.contains(reflected):
            par = parallelogram(p[i - 1], p[i], p[i + 1], reflected)
            for rest in rec(p[:i] + (reflected,) + p[i + 1 :]):
                out.append(rest + (par,))
        cache[p] = out
        return out

    return rec(tuple(path))


# -- gluing and validity -----------------------------------------------------------


def _dual_graph(cells, poly: LatticePolygon):
    """Thread the dual curve through the cells.

    Returns (triangle count, arcs between trivalent vertices, ray count,
    vertex-free line count).  Raises InternalInvariantError on inconsistent
    tilings (an interior edge not shared by exactly two cells).
    """
    side_cells: dict[tuple[Point, Point], list[int]] = {}
    for idx, cell in enumerate(cells):
        for side in cell_sides(cell):
            side_cells.setdefault(side, []).append(idx)

    for side, owners in side_cells.items():
        if len(owners) > 2:
            raise InternalInvariantError(f"edge {side} shared by {len(owners)} cells")
        if len(owners) == 1 and not poly.segment_on_boundary(*side):
            raise InternalInvariantError(f"interior edge {side} has a single cell")

    tri_ids = [i for i, c in enumerate(cells) if c.kind == "triangle"]
    arcs: list[tuple[int, int]] = []
    rays = 0
    lines = 0
    seen: set[tuple[int, tuple[Point, Point]]] = set()

    def walk(start_cell: int, side):
        """Follow a strand from a port; returns ('ray', None) or ('vertex', id)."""
        cell_id, s = start_cell, side
        while True:
            owners = side_cells[s]
            nxt = [o for o in owners if o != cell_id]
            if not nxt:
                return ("ray", None)
            o = nxt[0]
            if cells[o].kind == "triangle":
                seen.add((o, s))
                return ("vertex", o)
            s = parallelogram_opposite(cells[o], s)
            cell_id = o

    for t in tri_ids:
        for side in cell_sides(cells[t]):
            if (t, side) in seen:
                continue
            seen.add((t, side))
            kind, other = walk(t, side)
            if kind == "ray":
                rays += 1
            else:
                arcs.append((t, other))

    # strands that never touch a trivalent vertex: boundary-to-boundary runs
    # through parallelograms only (a straight-line component of the curve)
    par_seen: set[tuple[int, tuple[Point, Point]]] = set()
    for idx, cell in enumerate(cells):
        if cell.kind != "parallelogram":
            continue
        for side in cell_sides(cell):
            if side_cells[side] != [idx] or (idx, side) in par_seen:
                continue
            cur, s = idx, side
            touched_triangle = False
            while True:
                par_seen.add((cur, s))
                s2 = parallelogram_opposite(cells[cur], s)
                par_seen.add((cur, s2))
                owners = [o for o in side_cells[s2] if o != cur]
                if not owners:
                    break
                if cells[owners[0]].kind == "triangle":
                    touched_triangle = True
                    break
                cur, s = owners[0], s2
            if not touched_triangle:
                lines += 1

    if 3 * len(tri_ids) != 2 * len(arcs) + rays:
        raise InternalInvariantError("dual graph slot count mismatch")
    return len(tri_ids), arcs, rays, lines


def _connected(n_nodes: int, node_ids, arcs) -> bool:
    parent = {t: t for t in node_ids}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in arcs:
        parent[find(a)] = find(b)
    return len({find(t) for t in node_ids}) <= 1


def validate_subdivision(sub: MarkedSubdivision, poly: LatticePolygon):
    """None if the subdivision is an irreducible rational curve with
    weight-one ends; otherwise a short reason string."""
    if sum(c.area2() for c in sub.cells) != poly.area2:
        raise InternalInvariantError("cells do not tile the polygon")

    for cell in sub.cells:
        for a, b in cell_sides(cell):
            if poly.segment_on_boundary(a, b) and gcd(abs(a[0] - b[0]), abs(a[1] - b[1])) != 1:
                return "boundary-weight"

    n_tri, arcs, _rays, lines = _dual_graph(sub.cells, poly)
    if lines:
        return "line-component"
    if n_tri == 0:
        return "no-trivalent-vertex"
    tri_ids = [i for i, c in enumerate(sub.cells) if c.kind == "triangle"]
    if not _connected(n_tri, tri_ids, arcs):
        return "disconnected"
    if len(arcs) != n_tri - 1:
        return "positive-genus"
    return None


# -- enumeration -------------------------------------------------------------------


@dataclass(frozen=True)
class TropicalCurve:
    subdivision: MarkedSubdivision
    bundle: MultiplicityBundle

    def to_json(self) -> dict:
        out = self.subdivision.to_json()
        out.update(self.bundle.to_json())
        return out


@dataclass
class Enumeration:
    polygon: LatticePolygon
    curves: list[TropicalCurve]
    dropped: Counter

    def motivic_total(self) -> GWElement:
        total = GWElement()
        for c in self.curves:
            total = total + c.bundle.motivic
        return total

    def invariants(self) -> "Invariants":
        """Total motivic count with rank N and signature W; checks that the
        total is determined by (N, W) as a sum of <1> and <-1> summands."""
        total = self.motivic_total()
        n, w = total.rank(), total.signature()
        if (n + w) % 2:
            raise InternalInvariantError("rank and signature have different parity")
        canonical = ((n + w) // 2) * form(1) + ((n - w) // 2) * form(-1)
        if not gw_equal(total, canonical):
            raise InternalInvariantError(
                "motivic total is not of hyperbolic-plus-ones shape"
            )
        return Invariants(total, canonical, n, w)


def _curves_for_path(poly: LatticePolygon, path) -> tuple[list[TropicalCurve], Counter]:
    curves: list[TropicalCurve] = []
    dropped: Counter = Counter()
    left = complete_path(path, 1, poly)
    right = complete_path(path, -1, poly)
    for cl in left:
        for cr in right:
            sub = MarkedSubdivision(tuple(path), tuple(sorted(cl + cr, key=_cell_key)))
            reason = validate_subdivision(sub, poly)
            if reason is None:
                curves.append(TropicalCurve(sub, curve_mult(sub)))
            else:
                dropped[reason] += 1
                logger.debug("dropped %s completion of path %s", reason, path)
    return curves, dropped


def _cell_key(cell: Cell):
    return (cell.kind, cell.vertices)


def _curve_key(curve: TropicalCurve):
    return (curve.subdivision.path, tuple(_cell_key(c) for c in curve.subdivision.cells))


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("GWCURVES_THREADS", "1")))
    except ValueError:
        return 1


def enumerate_curves(poly: LatticePolygon, jobs: int | None = None) -> Enumeration:
    """All irreducible rational tropical curves of degree ``poly`` through a
    vertically stretched configuration, with multiplicities, in canonical
    order.  Dropped completions are tallied in ``Enumeration.dropped``."""
    jobs = default_jobs() if jobs is None else max(1, jobs)
    paths = list(enumerate_paths(poly))
    curves: list[TropicalCurve] = []
    dropped: Counter = Counter()
    if jobs > 1 and len(paths) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunk = max(1, len(paths) // (4 * jobs))
            results = pool.map(_curves_for_path, itertools.repeat(poly), paths, chunksize=chunk)
            for cs, dr in results:
                curves.extend(cs)
                dropped.update(dr)
    else:
        for path in paths:
            cs, dr = _curves_for_path(poly, path)
            curves.extend(cs)
            dropped.update(dr)
    curves.sort(key=_curve_key)
    if dropped:
        logger.info(
            "%s: dropped %d completions (%s)",
            poly,
            sum(dropped.values()),
            ", ".join(f"{k}={v}" for k, v in sorted(dropped.items())),
        )
    return Enumeration(poly, curves, dropped)


@dataclass(frozen=True)
class Invariants:
    motivic: GWElement  # raw sum over curves
    canonical: GWElement  # (N+W)/2 <1> + (N-W)/2 <-1>
    n: int
    w: int


def count_invariants(poly: LatticePolygon, jobs: int | None = None) -> Invariants:
    """Enumerate and summarize: see :meth:`Enumeration.invariants`."""
    return enumerate_curves(poly, jobs=jobs).invariants()
