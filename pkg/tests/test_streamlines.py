"""
Tests for curvature line integration, seeding and SVG rendering.
"""
import math

import pytest

from curvature.charts import chart_form
from curvature.forms import principal_form
from curvature.sphere import extended_form
from polynomials.factors import real_linear_factors
from polynomials.parser import parse_poly
from rendering.portraits import chart_portrait, plane_portrait
from rendering.streamlines import (equator_seeds, integrate_streamline, integrate_streamlines, seed_grid,
                                   seed_rings, step_control)
from rendering.svg import RenderOptions, UmbilicMarker, index_label, render_svg
from umbilic_atlas.statuses import InvalidArgumentError, Termination, UmbilicError

REGION = (-2.0, 2.0, -2.0, 2.0)
CHART_REGION = (-1.0, 1.0, -1.0, 1.0)


@pytest.fixture(scope="module")
def half_paraboloid():
    return principal_form(parse_poly("1/2*x^2 + 1/2*y^2"))


@pytest.fixture(scope="module")
def saddle_chart():
    return chart_form(extended_form(parse_poly("x*y")), 'u+')


class TestIntegrateStreamline:

    def test_circle_on_paraboloid(self, half_paraboloid):
        line = integrate_streamline(half_paraboloid, (1.0, 0.0), branch=2, region=REGION, umbilics=[(0.0, 0.0)])
        assert len(line.points) > 10
        for x, y in line.points:
            assert abs(math.hypot(x, y) - 1.0) < 1e-4
        assert line.termination == Termination.MAX_LENGTH
        assert line.length == pytest.approx(2 * 4.0, rel=1e-6)

    def test_radial_line_stops_at_umbilic(self, half_paraboloid):
        line = integrate_streamline(half_paraboloid, (1.0, 0.0), branch=1, region=REGION, umbilics=[(0.0, 0.0)])
        reasons = {line.termination, line.backward_termination}
        assert reasons == {Termination.BOUNDARY, Termination.UMBILIC_PROXIMITY}
        assert all(abs(y) < 1e-9 for _, y in line.points)

    def test_equator_is_invariant(self, saddle_chart):
        line = integrate_streamline(saddle_chart, (0.5, 0.0), branch=1, region=CHART_REGION,
                                    umbilics=[(0.0, 0.0)])
        assert line.chart == 'u+'
        assert len(line.points) > 2
        assert all(abs(w) < 1e-6 for _, w in line.points)

    @pytest.mark.parametrize("name", ["paraboloid", "saddle", "hyperbolic_paraboloid", "monkey_saddle",
                                      "quartic", "four_lines"])
    def test_equator_invariant_for_corpus(self, corpus, name):
        f = corpus[name]
        chart = chart_form(extended_form(f), 'u+')
        fn = f.homogeneous_components()[int(f.degree())]
        on_equator = [(math.tan(factor.theta), 0.0) for factor in real_linear_factors(fn).factors
                      if abs(math.cos(factor.theta)) > 1e-12]
        seeds = equator_seeds(CHART_REGION, 8, avoid=on_equator, r_stop=1e-3)
        assert len(seeds) >= 6
        control = step_control(CHART_REGION, max_length=1.0)
        for seed in seeds:
            line = integrate_streamline(chart, seed, branch=1, region=CHART_REGION, umbilics=on_equator,
                                        control=control)
            assert len(line.points) > 2
            assert all(abs(w) < 1e-6 for _, w in line.points)

    def test_crossing_branch_leaves_equator(self, saddle_chart):
        line = integrate_streamline(saddle_chart, (0.5, 0.0), branch=2, region=CHART_REGION,
                                    umbilics=[(0.0, 0.0)])
        assert max(abs(w) for _, w in line.points) > 0.1

    def test_seed_at_umbilic(self, half_paraboloid):
        with pytest.raises(UmbilicError):
            integrate_streamline(half_paraboloid, (0.0, 0.0), region=REGION)
        with pytest.raises(UmbilicError):
            integrate_streamline(half_paraboloid, (1e-4, 0.0), region=REGION, umbilics=[(0.0, 0.0)])

    def test_invalid_arguments(self, half_paraboloid):
        with pytest.raises(InvalidArgumentError):
            integrate_streamline(half_paraboloid, (5.0, 0.0), region=REGION)
        with pytest.raises(InvalidArgumentError):
            integrate_streamline(half_paraboloid, (1.0, 0.0), branch=0, region=REGION)

    def test_forward_only(self, half_paraboloid):
        control = step_control(REGION, max_length=1.0)
        line = integrate_streamline(half_paraboloid, (1.0, 0.0), branch=2, region=REGION,
                                    control=control, both_ways=False)
        assert line.points[0] == (1.0, 0.0)
        assert line.length == pytest.approx(1.0, rel=1e-6)


class TestSeeding:

    def test_grid(self):
        assert seed_grid(REGION, 4) == [(-1.0, -1.0), (1.0, -1.0), (-1.0, 1.0), (1.0, 1.0)]
        assert seed_grid(REGION, 0) == []

    def test_rings(self):
        seeds = seed_rings([(0.0, 0.0)], REGION, r_stop=1e-3, per_ring=4)
        assert len(seeds) == 4
        assert all(math.hypot(*p) == pytest.approx(5e-3) for p in seeds)

    def test_equator_seeds_avoid_umbilics(self):
        seeds = equator_seeds(CHART_REGION, 3, avoid=[(0.0, 0.0)], r_stop=1e-3)
        assert seeds == [(-0.5, 0.0), (0.5, 0.0)]


class TestIntegrateStreamlines:

    def test_umbilic_seeds_are_skipped(self, half_paraboloid):
        seeds = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.5)]
        lines = integrate_streamlines(half_paraboloid, seeds, REGION, workers=2)
        assert [(line.seed_id, line.branch) for line in lines] == [(1, 1), (1, 2), (2, 1), (2, 2)]

    def test_failed_trace_is_recorded(self):
        def broken(xs, ys):
            raise FloatingPointError("overflow in the form")
        lines = integrate_streamlines(broken, [(0.5, 0.5)], REGION, branches=(1,))
        assert [(line.seed, line.termination, line.points) for line in lines] == \
            [((0.5, 0.5), Termination.STEP_FAILURE, [(0.5, 0.5)])]

    def test_deterministic_order(self, half_paraboloid):
        seeds = seed_grid(REGION, 9)
        first = integrate_streamlines(half_paraboloid, seeds, REGION, [(0.0, 0.0)], workers=4)
        second = integrate_streamlines(half_paraboloid, seeds, REGION, [(0.0, 0.0)], workers=1)
        assert [line.points for line in first] == [line.points for line in second]


class TestRendering:

    def test_empty_portrait_is_valid_svg(self):
        svg = render_svg([], [], RenderOptions(region=REGION))
        assert "<svg" in svg and svg.rstrip().endswith("</svg>")

    def test_markers_and_lines(self, half_paraboloid):
        lines = integrate_streamlines(half_paraboloid, [(1.0, 0.0)], REGION, [(0.0, 0.0)])
        markers = [UmbilicMarker(0.0, 0.0, "1"), UmbilicMarker(1.0, 0.0, "1/2", at_infinity=True)]
        svg = render_svg(lines, markers, RenderOptions(region=REGION, title="paraboloid"))
        assert "paraboloid" in svg
        assert svg == render_svg(lines, markers, RenderOptions(region=REGION, title="paraboloid"))

    def test_index_labels(self):
        assert index_label(2) == "1"
        assert index_label(-2) == "-1"
        assert index_label(1) == "1/2"
        assert index_label(-1) == "-1/2"
        assert index_label(0) == "0"


@pytest.mark.slow
class TestPortraits:

    def test_plane_portrait(self):
        portrait = plane_portrait(parse_poly("x^2 + y^2"), box=(-1.0, 1.0, -1.0, 1.0), seeds=9, workers=2)
        assert "<svg" in portrait.svg
        assert len(portrait.markers) == 1
        assert portrait.streamlines

    def test_plane_portrait_is_deterministic(self):
        f = parse_poly("x^3 - 3*x*y^2 + x^2 + y^2")
        first = plane_portrait(f, box=(-1.0, 1.0, -1.0, 1.0), seeds=9)
        second = plane_portrait(f, box=(-1.0, 1.0, -1.0, 1.0), seeds=9)
        assert first.svg == second.svg

    def test_chart_portrait_marks_equator_umbilic(self):
        portrait = chart_portrait(parse_poly("x*y"), 'u+', seeds=9, workers=2)
        infinity = [m for m in portrait.markers if m.at_infinity]
        assert [(m.x, m.y, m.label) for m in infinity] == [(0.0, 0.0, "1/2")]
        assert all(abs(p[1]) < 1e-6 for line in portrait.streamlines
                   if line.seed[1] == 0.0 and line.branch == 1 for p in line.points)
