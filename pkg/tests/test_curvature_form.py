"""
Tests for the principal form of a graph, its Hessian and point classes.
"""
import math

import numpy as np
import pytest
import sympy

from curvature.forms import (classify_form_type, classify_point, hessian_curve_is_compact, hessian_det,
                             homogenize_hessian, principal_curvature_coefficients, principal_form)
from polynomials.parser import parse_poly
from umbilic_atlas.statuses import DegenerateInputError, FormType, PointClass


def sympy_principal_form(expr):
    x, y = sympy.symbols('x y')
    fx, fy = sympy.diff(expr, x), sympy.diff(expr, y)
    fxx, fxy, fyy = sympy.diff(expr, x, 2), sympy.diff(expr, x, y), sympy.diff(expr, y, 2)
    A = fxy * (1 + fx ** 2) - fx * fy * fxx
    B = fyy * (1 + fx ** 2) - fxx * (1 + fy ** 2)
    C = fx * fy * fyy - fxy * (1 + fy ** 2)
    return [sympy.expand(e) for e in (A, B, C)]


class TestPrincipalForm:

    def test_half_paraboloid(self):
        form = principal_form(parse_poly("1/2*x^2 + 1/2*y^2"))
        assert form.Atilde == parse_poly("-x*y")
        assert form.Btilde == parse_poly("x^2 - y^2")
        assert form.Ctilde == parse_poly("x*y")
        assert form.n == 2

    def test_paraboloid(self):
        form = principal_form(parse_poly("x^2 + y^2"))
        assert form.coefficients == (parse_poly("-4*x*y"), parse_poly("8*x^2 - 8*y^2"), parse_poly("4*x*y"))

    def test_saddle(self):
        form = principal_form(parse_poly("x*y"))
        assert form.Atilde == parse_poly("1 + y^2")
        assert form.Btilde.is_zero()
        assert form.Ctilde == parse_poly("-1 - x^2")

    def test_against_sympy(self, corpus, sympy_of):
        for name, f in corpus.items():
            form = principal_form(f)
            expected = sympy_principal_form(sympy_of(f))
            for ours, theirs in zip(form.coefficients, expected):
                assert sympy.expand(sympy_of(ours) - theirs) == 0, f"{name}: coefficient mismatch"

    def test_matches_fundamental_forms(self, corpus):
        """The stored form is the curvature equation times sqrt(1 + |grad f|^2)."""
        f = corpus['quartic']
        p = (0.3, -0.7)
        fx = float(f.partial('x').evaluate(p))
        fy = float(f.partial('y').evaluate(p))
        w = math.sqrt(1 + fx * fx + fy * fy)
        coefficients = principal_curvature_coefficients(f, p)
        assert [c * w for c in coefficients] == pytest.approx(list(principal_form(f).at(p)), rel=1e-12)

    def test_vanishes_at_umbilic(self):
        form = principal_form(parse_poly("x^2 + y^2"))
        assert form.at((0.0, 0.0)) == (0.0, 0.0, 0.0)
        assert form.scaled_residuals((0.0, 0.0)) == (0.0, 0.0, 0.0)
        assert max(form.scaled_residuals((1.0, 0.5))) > 0.1

    def test_vectorised_evaluator(self):
        form = principal_form(parse_poly("x*y"))
        a, b, c = form.evaluator()(np.array([0.0, 1.0, 2.0]), np.array([1.0, 0.0, 2.0]))
        assert list(a) == [2.0, 1.0, 5.0]
        assert list(c) == [-1.0, -2.0, -5.0]

    def test_plane_is_degenerate(self):
        with pytest.raises(DegenerateInputError):
            principal_form(parse_poly("2*x + 3*y + 1"))


class TestHessian:

    @pytest.mark.parametrize("text, expected", [
        ("x^2 + y^2", "4"),
        ("x*y", "-1"),
        ("x^3 - 3*x*y^2", "-36*x^2 - 36*y^2"),
        ("x^3 + y^2", "12*x"),
    ])
    def test_hessian_det(self, text, expected):
        assert hessian_det(parse_poly(text)) == parse_poly(expected)

    def test_homogenize(self, corpus):
        projective = homogenize_hessian(corpus['monkey_saddle'])
        assert projective.degree == 2
        assert projective.Hf == parse_poly("-36*x^2 - 36*y^2 + 4*z^2", variables=('x', 'y', 'z'))

    def test_homogenize_every_corpus_entry(self, corpus):
        for f in corpus.values():
            projective = homogenize_hessian(f)
            assert projective.Hf.is_homogeneous()

    def test_flat_hessian_rejected(self):
        with pytest.raises(DegenerateInputError):
            homogenize_hessian(parse_poly("x^2"))

    def test_compact_hessian_curve(self, corpus):
        assert hessian_curve_is_compact(corpus['monkey_saddle'])
        assert not hessian_curve_is_compact(parse_poly("x^3 + y^3"))
        assert not hessian_curve_is_compact(parse_poly("x^3 + y^2"))


class TestClassification:

    def test_point_classes(self):
        f = parse_poly("x^3 + y^2")
        assert classify_point(f, (1.0, 0.0)) == PointClass.ELLIPTIC
        assert classify_point(f, (-1.0, 0.0)) == PointClass.HYPERBOLIC
        assert classify_point(f, (0.0, 3.0)) == PointClass.PARABOLIC

    def test_constant_hessians(self):
        assert classify_point(parse_poly("x^2 + y^2"), (5.0, -2.0)) == PointClass.ELLIPTIC
        assert classify_point(parse_poly("x*y"), (0.0, 0.0)) == PointClass.HYPERBOLIC

    @pytest.mark.parametrize("text, kind", [
        ("x^2 + y^2", FormType.ELLIPTIC),
        ("x*y", FormType.HYPERBOLIC),
        ("x^3 - 3*x*y^2", FormType.HYPERBOLIC),
        ("x^4 + y^4", FormType.NEITHER),
        ("x^3 + y^3", FormType.NEITHER),
    ])
    def test_form_types(self, text, kind):
        assert classify_form_type(parse_poly(text)).kind == kind

    def test_power_of_linear_form(self):
        result = classify_form_type(parse_poly("x^2"))
        assert result.kind == FormType.NEITHER
        assert result.power_of_linear_form

    def test_rejects_inhomogeneous(self):
        with pytest.raises(DegenerateInputError):
            classify_form_type(parse_poly("x^2 + y"))
