import pytest

from burkill.catalog import fixture, length_fn, poly, stieltjes
from burkill.core import Dyadic, Region, ZERO
from burkill.planar import (
    RectFunction,
    area_function,
    bottom_strips_function,
    chop,
    closed_rect,
    estimate_norm_limits_2d,
    fubini_chain,
    grid_division,
    planar_config,
    product_function,
    riemann_sum_2d,
    seeded_guillotine,
    two_squares_function,
)

D = Dyadic
UNIT_SQ = closed_rect(ZERO, D(1), ZERO, D(1))


class TestRectBasics:
    def test_area_and_diameter(self):
        r = closed_rect(ZERO, D(3, 2), ZERO, D(1, 1))
        assert r.area == D(3, 3)
        assert abs(r.diameter - (0.75 ** 2 + 0.5 ** 2) ** 0.5) < 1e-15

    def test_regularity(self):
        r = closed_rect(ZERO, D(1), ZERO, D(1, 1))
        assert r.regularity == 0.5

    def test_sixteen_variants(self):
        assert len({str(v) for v in UNIT_SQ.variants()}) == 16

    def test_chop_piece_sizes(self):
        pts = chop(ZERO, D(13, 4), D(1, 3))
        gaps = [(b - a).as_fraction() for a, b in zip(pts, pts[1:])]
        for gap in gaps:
            assert 1 / 8 <= gap < 1 / 4
        assert sum(gaps) == 13 / 16


class TestDivisions:
    def test_grid_partitions_area(self):
        div = grid_division(UNIT_SQ, D(1, 3))
        assert div.area_total() == D(1)
        assert div.mode == "restricted"

    def test_grid_regularity_floor(self):
        div = grid_division(UNIT_SQ, D(1, 4),
                            x_anchor=[D(5, 4)], y_anchor=[D(1, 2)])
        for r in div.rects:
            assert r.regularity >= 0.5

    def test_seeded_partitions_area(self):
        sq = two_squares_function()
        specials = sq.special_rects(UNIT_SQ, D(1, 4))
        div = seeded_guillotine(UNIT_SQ, specials, D(1, 6))
        assert div.area_total() == D(1)
        charged = [r for r in div.rects if sq(r) == 1.0]
        assert len(charged) == 2

    def test_riemann_sum_area(self):
        div = grid_division(UNIT_SQ, D(1, 3))
        assert riemann_sum_2d(area_function(), div) == 1.0

    def test_riemann_sum_product_telescopes(self):
        f = poly("xy", [0, 1])
        gT = product_function(stieltjes(f), stieltjes(f))
        div = grid_division(UNIT_SQ, D(1, 3))
        assert abs(riemann_sum_2d(gT, div) - 1.0) < 1e-12

    def test_restricted_grid_isolates_one_square(self):
        sq = two_squares_function()
        sp = sq.special_rects(UNIT_SQ, D(1, 4))[0]
        div = grid_division(UNIT_SQ, D(1, 6),
                            x_anchor=[sp.x.lo, sp.x.hi],
                            y_anchor=[sp.y.lo, sp.y.hi])
        assert riemann_sum_2d(sq, div) == 1.0


@pytest.fixture(scope="module")
def gap_reports():
    cfg = planar_config()
    out = {}
    for name, fn in (("squares", two_squares_function()),
                     ("strips", bottom_strips_function())):
        for mode in ("restricted", "extended"):
            out[name, mode] = estimate_norm_limits_2d(fn, UNIT_SQ, mode, cfg)
    return out


class TestPlanarGap:
    def test_two_squares(self, gap_reports):
        assert gap_reports["squares", "extended"].upper == 2.0
        assert gap_reports["squares", "restricted"].upper == 1.0

    def test_bottom_strips(self, gap_reports):
        assert gap_reports["strips", "extended"].upper == 1.0
        assert gap_reports["strips", "restricted"].upper == 0.5

    def test_area_converges_in_both_modes(self):
        cfg = planar_config()
        for mode in ("restricted", "extended"):
            rep = estimate_norm_limits_2d(area_function(), UNIT_SQ, mode, cfg)
            assert rep.verdict.kind == "converged"
            assert rep.verdict.value == 1.0

    def test_restricted_below_extended(self, gap_reports):
        for name in ("squares", "strips"):
            res = gap_reports[name, "restricted"]
            ext = gap_reports[name, "extended"]
            for r, x in zip(res.levels, ext.levels):
                assert r.upper <= x.upper + 1e-12

    def test_bad_mode(self):
        with pytest.raises(ValueError):
            estimate_norm_limits_2d(area_function(), UNIT_SQ, "diagonal")


class TestFubini:
    def test_product_collapses(self):
        gT = product_function(stieltjes(poly("x^2", [0, 0, 1])),
                              stieltjes(poly("y^3", [0, 0, 0, 1])))
        rep = fubini_chain(gT, UNIT_SQ)
        assert rep.ordered
        for v in (rep.lower_2d, rep.iterated_lower, rep.iterated_upper,
                  rep.upper_2d):
            assert abs(v - 1.0) <= 1e-9

    def test_area_chain(self):
        rep = fubini_chain(area_function(), UNIT_SQ)
        assert rep.ordered
        assert abs(rep.upper_2d - 1.0) <= 1e-9

    def test_asymmetric_strict_ordering(self):
        charge = fixture("origin_indicator").fn
        gT = RectFunction("asym",
                          lambda r: float(r.x.length) * charge(r.y))
        tall = closed_rect(ZERO, D(1), D(-1), D(1))
        rep = fubini_chain(gT, tall)
        assert rep.ordered
        assert rep.iterated_upper - rep.iterated_lower >= 1.0


class TestProductBV:
    def test_length_times_length(self):
        from burkill.planar import product_bv_check
        unit = Region.interval(ZERO, D(1))
        out = product_bv_check(length_fn(), length_fn(), unit, unit)
        assert out["verdict"] == "holds"
        assert out["var_2d"] <= out["bound"] + 1e-9

    def test_hump_factor(self):
        from burkill.planar import product_bv_check
        unit = Region.interval(ZERO, D(1))
        out = product_bv_check(stieltjes(poly("x", [0, 1])),
                               stieltjes(poly("x(1-x)", [0, 1, -1])),
                               unit, unit)
        assert out["verdict"] == "holds"
        assert out["bound"] <= 0.5 + 1e-6

    def test_non_bv_factor_not_applicable(self):
        from burkill.planar import product_bv_check
        fx = fixture("dyadic_blocks")
        unit = Region.interval(ZERO, D(1))
        out = product_bv_check(fx.fn, length_fn(), fx.region, unit)
        assert out["verdict"] == "not-applicable"
