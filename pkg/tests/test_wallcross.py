"""Wall-crossing recursion, invariant tables, and the classical oracle."""

from __future__ import annotations

import pytest

from gwcurves.betapoly import BetaPolynomial
from gwcurves.expr import parse_expression
from gwcurves.gw import H, ONE, DomainError, gw_equal
from gwcurves.polygon import p2, polygon, preset
from gwcurves.wallcross import (
    InvariantTable,
    SurfaceChain,
    base_invariant,
    build_tables,
    chain_from,
    kontsevich_nd,
    quartic_chain,
    wall_cross_step,
)

# The degree-4 invariant tables: rows s = 0.. for the plane, the Hirzebruch
# surface with class 4-2E, its blow-up with 4-2E-2E', and the conic polygon.
P2_ROWS = [
    "190*h + 240*<1>",
    "190*h + 144*<1> + 48*b1",
    "190*h + 80*<1> + 32*b1 + 32*b2 + 8*b1*b2",
    "190*h + 40*<1> + 20*b1 + 20*b2 + 20*b3 + 6*b1*b2 + 6*b1*b3 + 6*b2*b3 + b1*b2*b3",
    "190*h + 16*<1> + 12*b1 + 12*b2 + 12*b3 + 12*b4"
    " + 4*b1*b2 + 4*b1*b3 + 4*b1*b4 + 4*b2*b3 + 4*b2*b4 + 4*b3*b4"
    " + b1*b2*b3 + b1*b2*b4 + b1*b3*b4 + b2*b3*b4",
    "190*h + 8*b1 + 8*b2 + 8*b3 + 8*b4 + 8*b5"
    " + 2*b1*b2 + 2*b1*b3 + 2*b1*b4 + 2*b1*b5 + 2*b2*b3 + 2*b2*b4 + 2*b2*b5"
    " + 2*b3*b4 + 2*b3*b5 + 2*b4*b5"
    " + b1*b2*b3 + b1*b2*b4 + b1*b2*b5 + b1*b3*b4 + b1*b3*b5 + b1*b4*b5"
    " + b2*b3*b4 + b2*b3*b5 + b2*b4*b5 + b3*b4*b5",
]
F1_ROWS = [
    "24*h + 48*<1>",
    "24*h + 32*<1> + 8*b1",
    "24*h + 20*<1> + 6*b1 + 6*b2 + b1*b2",
    "24*h + 12*<1> + 4*b1 + 4*b2 + 4*b3 + b1*b2 + b1*b3 + b2*b3",
    "24*h + 8*<1> + 2*b1 + 2*b2 + 2*b3 + 2*b4"
    " + b1*b2 + b1*b3 + b1*b4 + b2*b3 + b2*b4 + b3*b4",
]
BLF1_ROWS = [
    "2*h + 8*<1>",
    "2*h + 6*<1> + b1",
    "2*h + 4*<1> + b1 + b2",
    "2*h + 2*<1> + b1 + b2 + b3",
]
BL2F1_ROWS = ["<1>", "<1>", "<1>"]

GOLDEN = [P2_ROWS, F1_ROWS, BLF1_ROWS, BL2F1_ROWS]


class TestKontsevich:
    def test_known_values(self):
        assert [kontsevich_nd(d) for d in (1, 2, 3, 4, 5, 6)] == [
            1,
            1,
            12,
            620,
            87304,
            26312976,
        ]

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            kontsevich_nd(0)


class TestWallCrossStep:
    def test_conic_blowup_row(self):
        out = wall_cross_step(
            BetaPolynomial.constant(2 * H + 8 * ONE), BetaPolynomial.constant(ONE), 1
        )
        assert out == parse_expression("2*h + 6*<1> + b1")

    def test_hirzebruch_row(self):
        out = wall_cross_step(
            BetaPolynomial.constant(24 * H + 48 * ONE),
            BetaPolynomial.constant(2 * H + 8 * ONE),
            1,
        )
        assert out.reduced() == parse_expression("24*h + 32*<1> + 8*b1")
        assert out.equivalent(parse_expression("24*h + 32*<1> + 8*b1"))

    def test_zero_blowup_is_identity(self):
        p = parse_expression("2*h + 6*<1> + b1")
        assert wall_cross_step(p, BetaPolynomial(), 2) == p

    def test_index_collision(self):
        p = parse_expression("b1")
        with pytest.raises(DomainError):
            wall_cross_step(p, BetaPolynomial.constant(ONE), 1)


class TestChains:
    def test_quartic_chain_is_valid(self):
        chain = quartic_chain()
        assert len(chain) == 4
        assert [q.point_budget() for q in chain.polygons] == [11, 9, 7, 5]
        assert [q.interior_count() for q in chain.polygons] == [3, 2, 1, 0]

    def test_chain_from_quartic_matches_preset_shape(self):
        auto = chain_from(p2(4))
        assert len(auto) == 4
        assert [q.interior_count() for q in auto.polygons] == [3, 2, 1, 0]

    def test_chain_from_cubic(self):
        chain = chain_from(p2(3))
        assert len(chain) == 2
        assert chain.polygons[1].interior_count() == 0

    def test_rejects_wrong_length(self):
        with pytest.raises(DomainError):
            SurfaceChain((p2(4), preset("f1_4_2e")))

    def test_rejects_non_chop(self):
        with pytest.raises(DomainError):
            SurfaceChain((preset("blf1"), polygon([(0, 0), (1, 0), (0, 1)])))

    def test_single_polygon_chain(self):
        chain = SurfaceChain((preset("bl2f1"),))
        assert len(chain) == 1


class TestBaseInvariants:
    def test_base_values(self, quartic_bases):
        assert quartic_bases[0] == 190 * H + 240 * ONE
        assert quartic_bases[1] == 24 * H + 48 * ONE
        assert quartic_bases[2] == 2 * H + 8 * ONE
        assert quartic_bases[3] == ONE

    def test_conic_direct(self):
        assert base_invariant(preset("bl2f1")) == ONE


class TestTables:
    def test_golden_rows_structurally(self, quartic_tables):
        assert len(quartic_tables) == 4
        for table, golden in zip(quartic_tables, GOLDEN):
            assert len(table.rows) == len(golden)
            for row, text in zip(table.rows, golden):
                assert row == parse_expression(text)

    def test_golden_rows_under_gw_equal(self, quartic_tables):
        for table, golden in zip(quartic_tables, GOLDEN):
            for row, text in zip(table.rows, golden):
                assert row.equivalent(parse_expression(text))

    def test_rank_profile_constant(self, quartic_tables):
        for table, want in zip(quartic_tables, (620, 96, 12, 1)):
            for row in table.rows:
                assert row.rank_profile() == want

    def test_monic_in_top_row(self, quartic_tables):
        for table in quartic_tables:
            g = table.polygon.interior_count()
            assert table.rows[g].coeff(tuple(range(1, g + 1))) == ONE

    def test_specialization_recovers_row_zero(self, quartic_tables):
        for table in quartic_tables:
            base = table.rows[0].constant_value()
            for s, row in enumerate(table.rows):
                value = row.specialize({i: 1 for i in range(1, s + 1)})
                assert gw_equal(value, base)

    def test_welschinger_ladder(self, quartic_tables):
        p2_table, f1_table = quartic_tables[0], quartic_tables[1]
        sig = [
            row.signature_profile({i: -1 for i in range(1, s + 1)})
            for s, row in enumerate(p2_table.rows)
        ]
        assert sig == [240, 144, 80, 40, 16, 0]
        blow = [
            row.signature_profile({i: -1 for i in range(1, s + 1)})
            for s, row in enumerate(f1_table.rows)
        ]
        assert blow == [48, 32, 20, 12, 8]
        assert [a - b for a, b in zip(sig, sig[1:])] == [2 * v for v in blow]

    def test_conic_only_chain(self):
        (table,) = build_tables(SurfaceChain((preset("bl2f1"),)))
        assert [str(r) for r in table.rows] == ["<1>", "<1>", "<1>"]

    def test_cubic_chain_tables(self):
        tables = build_tables(chain_from(p2(3)))
        top = tables[0]
        assert top.rows[0].constant_value() == 2 * H + 8 * ONE
        # one interior point: monic linear polynomial
        assert top.rows[1].coeff((1,)) == ONE
        assert tables[1].rows[0].constant_value() == ONE

    def test_row_symbols_validator(self):
        with pytest.raises(DomainError):
            InvariantTable(preset("bl2f1"), (parse_expression("b1"),))

    def test_json_and_markdown(self, quartic_tables):
        t = quartic_tables[2]
        data = t.to_json()
        assert [r["s"] for r in data["rows"]] == [0, 1, 2, 3]
        md = t.markdown()
        assert "| 1 | 2h + 6·⟨1⟩ + β₁ |" in md
