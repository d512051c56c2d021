"""
Tests for the extension of the principal form to the Poincare sphere, its
chart restrictions and the exact identity suite.
"""
import math
from fractions import Fraction

import numpy as np
import pytest

from curvature.charts import (AXIS_FRAMES, chart_form, chart_to_plane, plane_to_chart, resolve_chart,
                              sphere_to_chart)
from curvature.forms import principal_form
from curvature.identities import equator_identities, identity_suite
from curvature.sphere import SpherePoint, build_F, extended_form, project, unproject
from polynomials.models import CHART_VARIABLES, SPHERE_VARIABLES
from polynomials.parser import parse_poly
from umbilic_atlas.statuses import DegenerateInputError, InvalidArgumentError, InvariantViolation
from umbilics.directions import root_directions


def sphere(text):
    return parse_poly(text, variables=SPHERE_VARIABLES)


def chart(text):
    return parse_poly(text, variables=CHART_VARIABLES)


class TestBuildF:

    def test_saddle(self):
        assert build_F(parse_poly("x*y")) == sphere("u*v")

    def test_monkey_saddle(self, corpus):
        F = build_F(corpus['monkey_saddle'])
        assert F == sphere("u^3 - 3*u*v^2 + w*u^2 + w*v^2")
        assert F.is_homogeneous()

    def test_dehomogenises_back(self, corpus):
        for f in corpus.values():
            F = build_F(f)
            assert dict(F.restrict("w", 1).drop_variable("w").terms) == dict(f.terms)

    def test_linear_input_rejected(self):
        with pytest.raises(DegenerateInputError):
            build_F(parse_poly("x + y"))


class TestExtendedForm:

    def test_saddle_coefficients(self):
        ext = extended_form(parse_poly("x*y"))
        assert ext.A == sphere("v^2 + w^2")
        assert ext.B.is_zero()
        assert ext.C == sphere("-u^2 - w^2")
        assert ext.T == sphere("w*u^2 - w*v^2")

    def test_degrees(self, corpus):
        for f in corpus.values():
            ext = extended_form(f)
            n = ext.n
            for poly in (ext.A, ext.B, ext.C):
                assert poly.is_zero() or poly.degree() == 3 * n - 4
            assert ext.T.is_zero() or ext.T.degree() == 3 * n - 3

    def test_t_linear_part_for_quadratics(self):
        """For f = b0 y + b1 x + y (a0 y + a1 x), T(1, v, w) starts 2 a1^2 b1 v + a1 (1 + b1^2) w."""
        ext = extended_form(parse_poly("7*x + 5*y + y*(2*y + 3*x)"))
        T = ext.T.restrict('u', 1).drop_variable('u')
        assert T.constant_term() == 0
        assert T.coefficient((1, 0)) == 2 * 9 * 7
        assert T.coefficient((0, 1)) == 3 * (1 + 49)

    def test_flat_point(self):
        ext = extended_form(parse_poly("x*y"))
        one, zero = Fraction(1), Fraction(0)
        assert ext.flat_point((one, zero, zero))
        assert ext.flat_point((zero, one, zero))
        assert not ext.flat_point((zero, zero, one))
        assert not ext.flat_point((one, one, zero))

    def test_matrix_is_symmetric(self, corpus):
        ext = extended_form(corpus['quartic'])
        m = ext.matrix_at((0.3, -0.4, 0.5))
        assert np.allclose(m, m.T)

    def test_restricts_to_the_plane_form(self, corpus):
        """On w = 1 the coefficients are those of the plane form."""
        f = corpus['monkey_saddle']
        ext = extended_form(f)
        form = principal_form(f)
        for p in ((0.5, -1.0), (2.0, 0.25)):
            point = (p[0], p[1], 1.0)
            assert float(ext.A.evaluate(point)) == pytest.approx(form.at(p)[0])
            assert float(ext.B.evaluate(point)) == pytest.approx(form.at(p)[1])
            assert float(ext.C.evaluate(point)) == pytest.approx(form.at(p)[2])


class TestCharts:

    def test_saddle_chart_u_plus(self):
        form = chart_form(extended_form(parse_poly("x*y")), 'u+')
        assert form.P == chart("-1 - w^2")
        assert form.Q == chart("-2*v - 2*v*w^2")
        assert form.S == chart("w - w*v^2")
        assert form.exact

    def test_saddle_equator_has_umbilics(self):
        form = chart_form(extended_form(parse_poly("x*y")), 'u+')
        assert form.at((0.0, 0.0)) == (0.0, 0.0, 0.0)
        a, b, c = form.at((0.5, 0.0))
        assert a == 0.0 and c == 0.0 and b == pytest.approx(1.0)

    @pytest.mark.parametrize("name", ['u+', 'u-', 'v+', 'v-', 'rot:90'])
    def test_exact_frames(self, name):
        _, frame, exact = resolve_chart(name)
        assert exact
        (du, dv), (eu, ev) = frame
        assert du * du + dv * dv == 1 and du * eu + dv * ev == 0

    def test_rotated_frame_is_float(self):
        _, _, exact = resolve_chart('rot:30')
        assert not exact

    def test_unknown_chart(self):
        with pytest.raises(InvalidArgumentError):
            resolve_chart('w+')

    def test_coordinates(self):
        frame = AXIS_FRAMES['u+']
        assert sphere_to_chart(frame, (1.0, 0.0, 0.0)) == (0.0, 0.0)
        assert sphere_to_chart(frame, (-1.0, 0.0, 0.0)) is None
        assert plane_to_chart(frame, (2.0, 1.0)) == (0.5, 0.5)
        assert chart_to_plane(frame, (0.5, 0.5)) == (2.0, 1.0)
        with pytest.raises(InvalidArgumentError):
            plane_to_chart(frame, (-1.0, 3.0))

    @pytest.mark.parametrize("chart_name", ['u+', 'v+', 'u-'])
    @pytest.mark.parametrize("name", ['saddle', 'monkey_saddle', 'quartic'])
    def test_chart_form_carries_plane_directions(self, corpus, name, chart_name):
        """A principal direction in the plane is a null direction of the chart form."""
        f = corpus[name]
        form = principal_form(f)
        chart_f = chart_form(extended_form(f), chart_name)
        for p in ((1.5, 0.7), (-2.0, 1.25), (0.4, -3.0)):
            try:
                q, _ = plane_to_chart(chart_f.frame, p, (1.0, 0.0))
            except InvalidArgumentError:
                continue
            for theta in root_directions(*form.at(p)):
                d = (math.cos(theta), math.sin(theta))
                q, dq = plane_to_chart(chart_f.frame, p, d)
                a, b, c = chart_f.at(q)
                value = a * dq[0] ** 2 + b * dq[0] * dq[1] + c * dq[1] ** 2
                scale = (abs(a) + abs(b) + abs(c)) * (dq[0] ** 2 + dq[1] ** 2)
                assert abs(value) <= 1e-9 * scale


class TestProjection:

    def test_origin_to_north_pole(self):
        assert project((0.0, 0.0)).as_tuple() == (0.0, 0.0, 1.0)

    def test_unit_point(self):
        q = project((1.0, 0.0))
        assert q.as_tuple() == pytest.approx((1 / math.sqrt(2), 0.0, 1 / math.sqrt(2)))

    def test_second_sheet_is_antipode(self):
        p = (0.3, -2.0)
        assert project(p, 2).as_tuple() == pytest.approx(project(p, 1).antipode().as_tuple())

    def test_unproject(self):
        for p in ((0.3, -2.0), (10.0, 4.0)):
            for sheet in (1, 2):
                assert unproject(project(p, sheet)) == pytest.approx(p)

    def test_invalid_sheet_and_points(self):
        with pytest.raises(InvalidArgumentError):
            project((0.0, 0.0), 3)
        with pytest.raises(InvariantViolation):
            SpherePoint(1.0, 1.0, 0.0)
        with pytest.raises(InvalidArgumentError):
            unproject(SpherePoint(1.0, 0.0, 0.0))


class TestIdentities:

    def test_paraboloid_equator(self):
        f = parse_poly("x^2 + y^2")
        checks = equator_identities(extended_form(f), f)
        assert checks['equator_uBvC'].lhs == sphere("4*u^3 + 4*u*v^2")
        assert all(check.holds for check in checks.values())

    def test_saddle_equator_t(self):
        f = parse_poly("x*y")
        checks = equator_identities(extended_form(f), f)
        assert checks['t_equator'].lhs.is_zero()

    def test_corpus(self, corpus):
        for name, f in corpus.items():
            report = identity_suite(f)
            assert report.all_hold, f"{name}: {report.to_dict()}"

    def test_report_shape(self, corpus):
        data = identity_suite(corpus['monkey_saddle']).to_dict()
        assert set(data) == {'euler', 'omega_divisibility', 'equator_uAvB', 'equator_uBvC', 't_equator',
                             'hessian_restriction', 'degree_bound', 'all_hold'}

    @pytest.mark.slow
    def test_random_polynomials(self, random_polys):
        for n, polys in random_polys.items():
            for f in polys:
                assert identity_suite(f, strict=True).all_hold, f"degree {n}: {f.to_text()}"

    @pytest.mark.slow
    @pytest.mark.parametrize("n", [7, 8])
    def test_high_degree_polynomials(self, high_degree_polys, n):
        for f in high_degree_polys[n]:
            assert identity_suite(f, strict=True).all_hold, f"degree {n}: {f.to_text()}"
