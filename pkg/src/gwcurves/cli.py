"""Command-line surface.

Subcommands:

    gw-eval "<expr>" [--json] [--unicode]      canonical form of an expression
    gw-equal "<e1>" "<e2>"                     exit 0 iff equal in GW(Q)
    tropical --polygon NAME|FILE [...]         enumerate curves, JSON/SVG out
    invariant --polygon NAME|FILE              motivic count with N and W
    table --chain NAME[,NAME...]               wall-crossing invariant tables
    oracle --kontsevich D                      classical rational plane count

Exit codes: 0 success (or equal), 1 not equal, 2 usage error, 3 internal
invariant violation.  GWCURVES_THREADS caps enumeration parallelism.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .betapoly import format_poly
from .expr import ExprError, parse_expression
from .gw import DomainError, format_gw, gw_equal
from .polygon import LatticePolygon, preset, preset_names
from .svgout import render_svg
from .tropical import InternalInvariantError, count_invariants, default_jobs, enumerate_curves
from .wallcross import SurfaceChain, build_tables, chain_from, kontsevich_nd, quartic_chain

DEFAULT_BUDGET_LIMIT = 14


class UsageError(Exception):
    pass


def _load_polygon(name: str) -> LatticePolygon:
    try:
        return preset(name)
    except DomainError:
        pass
    path = Path(name)
    if not path.is_file():
        raise UsageError(
            f"unknown polygon {name!r}: not a preset ({', '.join(preset_names())}) "
            "and not a readable file"
        )
    try:
        return LatticePolygon.from_json(json.loads(path.read_text()))
    except (OSError, ValueError, KeyError, DomainError) as exc:
        raise UsageError(f"cannot read polygon from {name}: {exc}") from exc


def _guard_budget(poly: LatticePolygon, limit: int) -> None:
    if poly.point_budget() > limit:
        raise UsageError(
            f"point budget {poly.point_budget()} exceeds limit {limit} "
            "(raise with --max-budget)"
        )


def _chain_for(arg: str) -> SurfaceChain:
    names = [s for s in arg.split(",") if s.strip()]
    if len(names) > 1:
        return SurfaceChain(tuple(_load_polygon(n) for n in names))
    if names[0].strip().lower() == "p2:4":
        return quartic_chain()
    return chain_from(_load_polygon(names[0]))


def _json_dump(data) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n"


def _cmd_gw_eval(args) -> int:
    poly = parse_expression(args.expr)
    if args.json:
        if poly.is_constant():
            payload = poly.constant_value().to_json()
            payload["pretty"] = format_gw(poly.constant_value())
        else:
            payload = poly.to_json()
            payload["pretty"] = format_poly(poly)
        sys.stdout.write(_json_dump(payload))
    else:
        print(format_poly(poly, unicode=args.unicode))
    return 0


def _cmd_gw_equal(args) -> int:
    p1 = parse_expression(args.expr1)
    p2_ = parse_expression(args.expr2)
    if not (p1.is_constant() and p2_.is_constant()):
        raise UsageError("gw-equal compares constants; got formal b symbols")
    if gw_equal(p1.constant_value(), p2_.constant_value()):
        print("equal")
        return 0
    print("not equal")
    return 1


def _enumeration_json(enum, inv) -> dict:
    return {
        "polygon": enum.polygon.to_json(),
        "curves": [c.to_json() for c in enum.curves],
        "motivic": inv.canonical.to_json(),
        "pretty": format_gw(inv.canonical),
        "complex": inv.n,
        "welschinger": inv.w,
        "dropped": dict(sorted(enum.dropped.items())),
    }


def _cmd_tropical(args) -> int:
    poly = _load_polygon(args.polygon)
    _guard_budget(poly, args.max_budget)
    enum = enumerate_curves(poly, jobs=default_jobs())
    inv = enum.invariants()
    print(f"polygon: {poly}")
    print(f"curves: {len(enum.curves)}")
    print(f"motivic: {format_gw(inv.canonical)}  N={inv.n}  W={inv.w}")
    if enum.dropped:
        drops = ", ".join(f"{k}={v}" for k, v in sorted(enum.dropped.items()))
        print(f"dropped completions: {drops}")
    if args.list_curves:
        for i, c in enumerate(enum.curves):
            b = c.bundle
            print(
                f"curve {i}: motivic={format_gw(b.motivic)} "
                f"complex={b.complex} welschinger={b.welschinger}"
            )
    if args.json:
        Path(args.json).write_text(_json_dump(_enumeration_json(enum, inv)))
    if args.svg:
        Path(args.svg).write_text(render_svg(enum, scale=args.svg_scale))
    return 0


def _cmd_invariant(args) -> int:
    poly = _load_polygon(args.polygon)
    _guard_budget(poly, args.max_budget)
    inv = count_invariants(poly, jobs=default_jobs())
    print(f"{format_gw(inv.canonical)}  N={inv.n}  W={inv.w}")
    return 0


def _cmd_table(args) -> int:
    chain = _chain_for(args.chain)
    for poly in chain.polygons:
        _guard_budget(poly, args.max_budget)
    tables = build_tables(chain, jobs=default_jobs())
    if args.signature:
        sign = 1 if args.signature == "pos" else -1
        for t in tables:
            sigs = [
                row.signature_profile({i: sign for i in range(1, s + 1)})
                for s, row in enumerate(t.rows)
            ]
            print(f"{t.polygon}: " + " ".join(str(v) for v in sigs))
        return 0
    if args.specialize is not None:
        try:
            cs = [int(v) for v in args.specialize.split(",") if v.strip()]
        except ValueError:
            raise UsageError("--specialize wants a comma-separated integer list") from None
        for t in tables:
            s = min(len(cs), t.s_max())
            row = t.rows[s]
            value = row.specialize({i + 1: cs[i] for i in range(s)})
            print(f"{t.polygon} (s={s}): {format_gw(value)}")
        return 0
    if args.json:
        sys.stdout.write(_json_dump({"tables": [t.to_json() for t in tables]}))
        return 0
    for t in tables:
        print(t.markdown())
        print()
    return 0


def _cmd_oracle(args) -> int:
    print(kontsevich_nd(args.kontsevich))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gwcurves",
        description="Quadratically enriched counts of rational curves on toric del Pezzo surfaces.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log enumeration details")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gw-eval", help="evaluate an expression to canonical form")
    p.add_argument("expr")
    p.add_argument("--json", action="store_true")
    p.add_argument("--unicode", action="store_true")
    p.set_defaults(func=_cmd_gw_eval)

    p = sub.add_parser("gw-equal", help="decide equality in GW(Q)")
    p.add_argument("expr1")
    p.add_argument("expr2")
    p.set_defaults(func=_cmd_gw_equal)

    p = sub.add_parser("tropical", help="enumerate tropical curves")
    p.add_argument("--polygon", required=True)
    p.add_argument("--list-curves", action="store_true")
    p.add_argument("--json", metavar="OUT")
    p.add_argument("--svg", metavar="OUT")
    p.add_argument("--svg-scale", type=int, default=24)
    p.add_argument("--max-budget", type=int, default=DEFAULT_BUDGET_LIMIT)
    p.set_defaults(func=_cmd_tropical)

    p = sub.add_parser("invariant", help="motivic count with rank and signature")
    p.add_argument("--polygon", required=True)
    p.add_argument("--max-budget", type=int, default=DEFAULT_BUDGET_LIMIT)
    p.set_defaults(func=_cmd_invariant)

    p = sub.add_parser("table", help="wall-crossing invariant tables")
    p.add_argument("--chain", required=True, help="e.g. p2:4 or a comma-separated polygon list")
    p.add_argument("--markdown", action="store_true", help="markdown output (default)")
    p.add_argument("--json", action="store_true")
    p.add_argument("--specialize", metavar="C1,C2,...")
    p.add_argument("--signature", choices=["neg", "pos"])
    p.add_argument("--max-budget", type=int, default=DEFAULT_BUDGET_LIMIT)
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("oracle", help="classical counting oracles")
    p.add_argument("--kontsevich", type=int, required=True, metavar="D")
    p.set_defaults(func=_cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (UsageError, ExprError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InternalInvariantError as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
