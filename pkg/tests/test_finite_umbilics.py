"""
Tests for principal directions, winding indices, the finite umbilic search
and the index ledger.
"""
import math

import numpy as np
import pytest

from curvature.forms import principal_form
from polynomials.parser import parse_poly
from umbilic_atlas.statuses import InvalidArgumentError, PointClass, UmbilicError, Verdict
from umbilics.directions import closest_root, direction_at, metric_angle, root_directions
from umbilics.finite import expand_box, find_finite_umbilics, search_finite_umbilics, validate_box
from umbilics.ledger import assemble_ledger, ledger_hypotheses, ph_check
from umbilics.models import FiniteSearch
from umbilics.winding import winding_index

SMALL_BOX = (-2.0, 2.0, -2.0, 2.0)


@pytest.fixture(scope="module")
def half_paraboloid():
    return principal_form(parse_poly("1/2*x^2 + 1/2*y^2"))


class TestDirections:

    def test_saddle_at_origin(self):
        form = principal_form(parse_poly("x*y"))
        t1, t2 = root_directions(*form.at((0.0, 0.0)))
        assert (t1, t2) == pytest.approx((math.pi / 4, 3 * math.pi / 4))

    def test_radial_and_circular_branches(self, half_paraboloid):
        assert direction_at(half_paraboloid, (1.0, 0.0), 1) == pytest.approx((1.0, 0.0))
        assert direction_at(half_paraboloid, (1.0, 0.0), 2) == pytest.approx((0.0, 1.0), abs=1e-15)

    def test_undefined_at_umbilic(self, half_paraboloid):
        with pytest.raises(UmbilicError):
            direction_at(half_paraboloid, (0.0, 0.0))
        with pytest.raises(UmbilicError):
            root_directions(0.0, 0.0, 0.0)

    def test_bad_branch(self, half_paraboloid):
        with pytest.raises(InvalidArgumentError):
            direction_at(half_paraboloid, (1.0, 0.0), 3)

    def test_continuation_keeps_orientation(self, half_paraboloid):
        d = direction_at(half_paraboloid, (0.0, 1.0), prev=(0.9, -0.1))
        assert d == pytest.approx((1.0, 0.0), abs=1e-12)
        d = direction_at(half_paraboloid, (0.0, 1.0), prev=(-0.9, 0.1))
        assert d == pytest.approx((-1.0, 0.0), abs=1e-12)

    def test_closest_root(self):
        assert closest_root(0.1, 1.6, 3.1) == 0.1
        assert closest_root(0.1, 1.6, 1.4) == 1.6

    @pytest.mark.parametrize("text", ["x*y", "x^3 - 3*x*y^2 + x^2 + y^2", "x^4 + y^4 - 4*x*y + x"])
    def test_branches_orthogonal_on_the_graph(self, text):
        f = parse_poly(text)
        form = principal_form(f)
        for p in ((1.0, 0.5), (-0.7, 1.3)):
            d1 = direction_at(form, p, 1)
            d2 = direction_at(form, p, 2)
            assert metric_angle(f, p, d1, d2) == pytest.approx(math.pi / 2, abs=1e-9)


class TestWinding:

    def test_paraboloid_origin(self, half_paraboloid):
        result = winding_index(half_paraboloid, (0.0, 0.0), 0.5)
        assert result.index_num_halves == 2
        assert result.certified
        assert result.index == 1

    def test_regular_point(self):
        form = principal_form(parse_poly("x*y"))
        result = winding_index(form, (0.0, 0.0), 0.3)
        assert result.index_num_halves == 0
        assert result.certified

    @pytest.mark.parametrize("sign, halves", [(-1, 1), (1, -1)])
    def test_half_integer_models(self, sign, halves):
        """y dx^2 -/+ 2x dx dy - y dy^2 has index +1/2 / -1/2 at the origin."""
        def model(xs, ys):
            return ys, sign * 2 * xs, -ys
        result = winding_index(model, (0.0, 0.0), 1.0)
        assert result.index_num_halves == halves
        assert result.certified

    @pytest.mark.parametrize("squeeze", [1e-2, 1e-8])
    def test_nearly_merged_lines(self, squeeze):
        """(a - c, b) = (x, y) with a + c just below |(x, y)|: the two lines almost coincide."""
        def model(xs, ys):
            s = (1.0 - squeeze) * np.hypot(xs, ys)
            return (s + xs) / 2, ys, (s - xs) / 2
        for radius in (0.1, 0.01):
            result = winding_index(model, (0.0, 0.0), radius)
            assert result.index_num_halves == 1
            assert result.certified
            assert not result.negative_discriminant

    def test_vanishing_form_is_not_certified(self):
        def model(xs, ys):
            return xs - 0.05, np.zeros_like(xs), np.zeros_like(xs)
        assert not winding_index(model, (0.0, 0.0), 0.05).certified

    def test_radius_must_be_positive(self, half_paraboloid):
        with pytest.raises(InvalidArgumentError):
            winding_index(half_paraboloid, (0.0, 0.0), 0.0)

    def test_radius_halving_agrees(self, half_paraboloid):
        big = winding_index(half_paraboloid, (0.0, 0.0), 1.0, certify=False)
        small = winding_index(half_paraboloid, (0.0, 0.0), 0.5, certify=False)
        assert big.index_num_halves == small.index_num_halves


class TestBoxes:

    def test_validate(self):
        assert validate_box([-1, 1, -2, 2]) == (-1.0, 1.0, -2.0, 2.0)
        with pytest.raises(InvalidArgumentError):
            validate_box([1, -1, 0, 2])
        with pytest.raises(InvalidArgumentError):
            validate_box([0, 1, 2])

    def test_expand(self):
        assert expand_box((-1.0, 3.0, 0.0, 2.0)) == (-3.0, 5.0, -1.0, 3.0)


class TestFiniteSearch:

    def test_paraboloid(self):
        search = search_finite_umbilics(principal_form(parse_poly("x^2 + y^2")), SMALL_BOX)
        assert len(search.umbilics) == 1
        u = search.umbilics[0]
        assert u.point == pytest.approx((0.0, 0.0), abs=1e-9)
        assert u.index_num_halves == 2
        assert u.certified
        assert u.point_class == PointClass.ELLIPTIC
        assert not search.non_isolated

    @pytest.mark.parametrize("text", ["x*y", "x^2 - y^2"])
    def test_no_umbilics(self, text):
        search = search_finite_umbilics(principal_form(parse_poly(text)), SMALL_BOX)
        assert search.umbilics == []

    def test_residuals_below_tolerance(self, corpus):
        form = principal_form(corpus['monkey_saddle'])
        search = search_finite_umbilics(form)
        assert search.umbilics
        for u in search.umbilics:
            assert max(u.residuals) < 1e-9 * (1 + form.scale())

    def test_results_are_sorted(self, corpus):
        search = search_finite_umbilics(principal_form(corpus['monkey_saddle']))
        points = [u.point for u in search.umbilics]
        assert points == sorted(points)

    def test_find_returns_the_list(self):
        umbilics = find_finite_umbilics(principal_form(parse_poly("x^2 + y^2")), SMALL_BOX)
        assert [u.index_num_halves for u in umbilics] == [2]

    @pytest.mark.parametrize("name", ["paraboloid", "saddle", "monkey_saddle",
                                      pytest.param("quartic", marks=pytest.mark.slow)])
    def test_doubling_the_box_changes_nothing(self, corpus, name):
        form = principal_form(corpus[name])
        default = search_finite_umbilics(form, (-10.0, 10.0, -10.0, 10.0))
        doubled = search_finite_umbilics(form, (-20.0, 20.0, -20.0, 20.0))
        assert len(default.umbilics) == len(doubled.umbilics)
        for u, v in zip(default.umbilics, doubled.umbilics):
            assert u.index_num_halves == v.index_num_halves
            assert math.hypot(u.x - v.x, u.y - v.y) < 1e-6

    def test_tolerance_must_be_positive(self, half_paraboloid):
        with pytest.raises(InvalidArgumentError):
            search_finite_umbilics(half_paraboloid, SMALL_BOX, tol=0.0)


class TestLedger:

    @pytest.mark.parametrize("text, R, total", [
        ("x^2 + y^2", 0, 2),
        ("x*y", 2, 0),
        ("x^2 - y^2", 2, 0),
        ("x^3 - 3*x*y^2 + x^2 + y^2", 3, -1),
    ])
    def test_index_sum_matches(self, text, R, total):
        ledger = ph_check(parse_poly(text))
        assert ledger.R == R
        assert ledger.rhs_halves == 2 - R
        assert ledger.sum_halves == total
        assert ledger.verdict == Verdict.PASS
        assert ledger.certified

    @pytest.mark.slow
    def test_quartic(self, corpus):
        ledger = ph_check(corpus['quartic'])
        assert ledger.R == 0
        assert ledger.verdict == Verdict.PASS
        assert ledger.sum_halves == 2

    def test_shared_factor_violates_hypotheses(self, corpus):
        f = corpus['four_lines']
        hypotheses = ledger_hypotheses(f, FiniteSearch([], SMALL_BOX))
        assert hypotheses == {'leading_square_free': True, 'coprime_leading_factors': False,
                              'umbilics_isolated': True}
        assert assemble_ledger(f, FiniteSearch([], SMALL_BOX)).verdict == Verdict.HYPOTHESES_VIOLATED

    def test_repeated_factor_violates_hypotheses(self):
        ledger = assemble_ledger(parse_poly("x^2*y + x^2 + y^2"), FiniteSearch([], SMALL_BOX))
        assert not ledger.hypotheses['leading_square_free']
        assert ledger.verdict == Verdict.HYPOTHESES_VIOLATED

    def test_non_isolated_umbilics(self):
        ledger = assemble_ledger(parse_poly("x*y"), FiniteSearch([], SMALL_BOX, non_isolated=True))
        assert ledger.verdict == Verdict.HYPOTHESES_VIOLATED

    def test_missing_umbilics_are_inconclusive(self):
        ledger = assemble_ledger(parse_poly("x^2 + y^2"), FiniteSearch([], SMALL_BOX))
        assert ledger.sum_halves == 0
        assert ledger.verdict == Verdict.INCONCLUSIVE
