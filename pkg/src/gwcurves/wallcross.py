"""Wall-crossing recursion over invariant tables.

Replacing two rational point conditions by a conjugate pair over Q(sqrt(c))
changes the motivic count by (beta - 2<1>) times the count on the blow-up
with class D - 2E, where beta = <2> + <2c> is the trace form of <1>.  Over
a chain of polygons obtained by successive depth-2 corner chops this gives
a dynamic program: with N_j(s) the invariant of chain level j with s
conjugate pairs,

    N_j(s+1) = N_j(s) + (b_{s+1} - 2<1>) * N_{j+1}(s),

seeded at s = 0 by the tropical count of each polygon and at the bottom
level by a polygon with no interior points, whose rows are constant.
Rows are kept as multilinear polynomials in the formal symbols b_i so one
table covers every choice of the extensions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .betapoly import BetaPolynomial, mul_step
from .gw import GWElement, DomainError
from .polygon import LatticePolygon, preset, sl2z_equivalent
from .tropical import count_invariants


def kontsevich_nd(d: int) -> int:
    """Count of rational degree-d plane curves through 3d-1 generic points,
    by the classical recursion in exact integer arithmetic."""
    if d < 1:
        raise DomainError("degree must be >= 1")
    return _kontsevich(d)


@lru_cache(maxsize=None)
def _kontsevich(d: int) -> int:
    if d == 1:
        return 1
    total = 0
    for da in range(1, d):
        db = d - da
        total += (
            _kontsevich(da)
            * _kontsevich(db)
            * da * da * db
            * (db * comb(3 * d - 4, 3 * da - 2) - da * comb(3 * d - 4, 3 * da - 1))
        )
    return total


def base_invariant(poly: LatticePolygon, jobs: int | None = None) -> GWElement:
    """Motivic count for an all-rational configuration, in the canonical
    a*h + b*<1> shape (checked isometric to the raw tropical sum)."""
    return count_invariants(poly, jobs=jobs).canonical


def wall_cross_step(
    n_surface: BetaPolynomial, n_blowup: BetaPolynomial, next_index: int
) -> BetaPolynomial:
    """One wall: N(s+1) = N(s) + (b_{next} - 2<1>) * N_blowup(s)."""
    used = n_surface.indices() | n_blowup.indices()
    if next_index in used:
        raise DomainError(f"index {next_index} already in use")
    if used and max(used) >= next_index:
        raise DomainError("indices must be crossed in increasing order")
    return n_surface + mul_step(n_blowup, next_index)


@dataclass(frozen=True)
class SurfaceChain:
    """Polygons linked by depth-2 corner chops, ending with no interior
    points; the chain length equals the interior count of the first."""

    polygons: tuple[LatticePolygon, ...]

    def __post_init__(self) -> None:
        polys = self.polygons
        if not polys:
            raise DomainError("empty chain")
        if polys[-1].interior_count() != 0:
            raise DomainError("chain must end with an interior-point-free polygon")
        if len(polys) - 1 != polys[0].interior_count():
            raise DomainError("chain length must be 1 + interior count of the top")
        for a, b in zip(polys, polys[1:]):
            if a.point_budget() - 2 != b.point_budget():
                raise DomainError("point budget must drop by 2 at each chop")
            if not any(
                _chops_to(a, v, b) for v in a.vertices
            ):
                raise DomainError(f"{b} is not a depth-2 corner chop of {a}")

    def __len__(self) -> int:
        return len(self.polygons)


def _chops_to(a: LatticePolygon, vertex, b: LatticePolygon) -> bool:
    try:
        chopped = a.chop_corner(vertex, 2)
    except DomainError:
        return False
    return sl2z_equivalent(chopped, b)


def chain_from(top: LatticePolygon) -> SurfaceChain:
    """Chop depth-2 corners (first choppable vertex in cycle order) until no
    interior points remain."""
    polys = [top]
    while polys[-1].interior_count() > 0:
        cur = polys[-1]
        for v in cur.vertices:
            try:
                nxt = cur.chop_corner(v, 2)
            except DomainError:
                continue
            polys.append(nxt)
            break
        else:
            raise DomainError(f"no depth-2 chop available on {cur}")
    return SurfaceChain(tuple(polys))


def quartic_chain() -> SurfaceChain:
    """The quartic chain: P2 degree 4, then 4-2E, 4-2E-2E', 4-2E-2E'-2E''."""
    return SurfaceChain(
        (preset("p2:4"), preset("f1_4_2e"), preset("blf1"), preset("bl2f1"))
    )


@dataclass(frozen=True)
class InvariantTable:
    """Rows s = 0..point_budget//2 of invariants with s conjugate pairs."""

    polygon: LatticePolygon
    rows: tuple[BetaPolynomial, ...]

    def __post_init__(self) -> None:
        ranks = {row.rank_profile() for row in self.rows}
        if len(ranks) != 1:
            raise DomainError("rank profile must be constant down a table")
        for s, row in enumerate(self.rows):
            if row.indices() - set(range(1, s + 1)):
                raise DomainError(f"row {s} uses symbols beyond b1..b{s}")

    def s_max(self) -> int:
        return len(self.rows) - 1

    def to_json(self) -> dict:
        return {
            "polygon": self.polygon.to_json(),
            "rows": [
                {"s": s, "value": row.to_json()} for s, row in enumerate(self.rows)
            ],
        }

    def markdown(self) -> str:
        from .betapoly import format_poly

        lines = [f"### {self.polygon}", "", "| s | invariant |", "| --- | --- |"]
        for s, row in enumerate(self.rows):
            lines.append(f"| {s} | {format_poly(row, unicode=True)} |")
        return "\n".join(lines)


def build_tables(
    chain: SurfaceChain,
    bases: dict[int, GWElement] | None = None,
    jobs: int | None = None,
) -> list[InvariantTable]:
    """Bottom-up dynamic program over the chain.

    ``bases`` may supply precomputed base invariants (keyed by chain level)
    to skip re-running the tropical enumeration.
    """
    polys = chain.polygons
    bases = dict(bases or {})
    for j, poly in enumerate(polys):
        if j not in bases:
            bases[j] = base_invariant(poly, jobs=jobs)

    tables: list[InvariantTable | None] = [None] * len(polys)
    bottom = polys[-1]
    const = BetaPolynomial.constant(bases[len(polys) - 1])
    tables[-1] = InvariantTable(
        bottom, tuple(const for _ in range(bottom.point_budget() // 2 + 1))
    )
    for j in range(len(polys) - 2, -1, -1):
        poly = polys[j]
        below = tables[j + 1]
        rows = [BetaPolynomial.constant(bases[j])]
        for s in range(poly.point_budget() // 2):
            rows.append(
                wall_cross_step(rows[s], below.rows[s], s + 1).reduced()
            )
        tables[j] = InvariantTable(poly, tuple(rows))
    return tables
