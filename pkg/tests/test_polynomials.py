"""
Tests for exact polynomial arithmetic: homogeneous parts, derivatives,
resultants, real root isolation, linear factors and residues.
"""
import math
from fractions import Fraction

import pytest
import sympy

from polynomials.calculus import binary_form_coefficients, euler_defect, homogeneous_decompose, partial
from polynomials.factors import real_linear_factors
from polynomials.models import BiPoly, Residue
from polynomials.parser import parse_poly
from polynomials.resultants import bareiss_determinant, resultant
from polynomials.roots import DEFAULT_WIDTH_BITS, isolate_real_roots, square_free_decomposition
from umbilic_atlas import settings
from umbilic_atlas.statuses import DegenerateInputError, InvalidArgumentError


class TestHomogeneousParts:

    def test_decomposition(self):
        f = parse_poly("x^3 - 3*x*y^2 + x^2 + y^2")
        parts = homogeneous_decompose(f)
        assert len(parts) == 4
        assert parts[0].is_zero() and parts[1].is_zero()
        assert parts[2] == parse_poly("x^2 + y^2")
        assert parts[3] == parse_poly("x^3 - 3*x*y^2")

    def test_zero_decomposes_to_nothing(self):
        assert homogeneous_decompose(BiPoly()) == []

    def test_parts_sum_back(self, corpus):
        for f in corpus.values():
            total = BiPoly()
            for part in homogeneous_decompose(f):
                total = total + part
            assert total == f

    def test_euler_relation(self, corpus, random_polys):
        polys = list(corpus.values()) + [f for fs in random_polys.values() for f in fs[:5]]
        for f in polys:
            for i, fi in enumerate(homogeneous_decompose(f)):
                assert euler_defect(fi, i).is_zero()

    def test_euler_relation_high_degree(self, high_degree_polys):
        for n, polys in high_degree_polys.items():
            for f in polys:
                assert f.degree() == n
                for i, fi in enumerate(homogeneous_decompose(f)):
                    assert euler_defect(fi, i).is_zero()

    def test_binary_form_coefficients(self):
        assert binary_form_coefficients(parse_poly("x^3 - 3*x*y^2")) == [1, 0, -3, 0]


class TestPartials:

    def test_first_and_second_order(self):
        f = parse_poly("x^3 - 3*x*y^2")
        assert partial(f, 'x') == parse_poly("3*x^2 - 3*y^2")
        assert partial(f, 'y') == parse_poly("-6*x*y")
        assert partial(f, 'x', 2) == parse_poly("6*x")
        assert partial(partial(f, 'x'), 'y') == parse_poly("-6*y")

    def test_against_sympy(self, corpus, sympy_of):
        x, y = sympy.symbols('x y')
        for f in corpus.values():
            for var, sym in (('x', x), ('y', y)):
                assert sympy.expand(sympy_of(partial(f, var)) - sympy.diff(sympy_of(f), sym)) == 0


class TestResultant:

    def test_linear_pair(self):
        assert resultant(parse_poly("y - x"), parse_poly("y + x"), 'y') == parse_poly("2*x")

    def test_constant_resultant(self):
        assert resultant(parse_poly("x*y - 1"), parse_poly("y"), 'y') == parse_poly("1")

    def test_common_factor_vanishes(self):
        f = parse_poly("x*y + y^2 + 1")
        assert resultant(f, f, 'y').is_zero()
        assert resultant(f * parse_poly("x + y"), f * parse_poly("x - 2"), 'y').is_zero()

    def test_only_kept_variable_occurs(self):
        r = resultant(parse_poly("x^2 + y^2 - 1"), parse_poly("x - y"), 'y')
        assert r.degree_in('y') == 0
        assert r == parse_poly("2*x^2 - 1")

    @pytest.mark.parametrize("f_text, g_text, var", [
        ("x^2*y^3 - 2*x*y + 1", "y^2 + x*y - 3*x^2", 'y'),
        ("1/2*x*y^2 + y - x^3", "x^2*y - 5", 'y'),
        ("x^3 - 3*x*y^2 + x^2 + y^2", "x*y - y + 2", 'x'),
    ])
    def test_against_sympy(self, f_text, g_text, var, sympy_of):
        f, g = parse_poly(f_text), parse_poly(g_text)
        ours = sympy_of(resultant(f, g, var))
        expected = sympy.resultant(sympy_of(f), sympy_of(g), sympy.Symbol(var))
        assert sympy.expand(ours - expected) == 0

    def test_both_constant_in_variable(self):
        with pytest.raises(DegenerateInputError):
            resultant(parse_poly("x + 1"), parse_poly("x^2"), 'y')

    def test_zero_polynomial(self):
        with pytest.raises(InvalidArgumentError):
            resultant(BiPoly(), parse_poly("y"), 'y')

    def test_bareiss_determinant(self):
        assert bareiss_determinant([[2, 0, 1], [1, 3, 2], [1, 1, 1]]) == 0
        assert bareiss_determinant([[0, 1], [1, 0]]) == -1


class TestRootIsolation:

    def test_two_simple_roots(self):
        roots = isolate_real_roots([1, 0, -3])
        assert len(roots) == 2
        assert [r.multiplicity for r in roots] == [1, 1]
        assert roots[0].to_float() == pytest.approx(-1 / math.sqrt(3), abs=1e-12)
        assert roots[1].to_float() == pytest.approx(1 / math.sqrt(3), abs=1e-12)
        assert roots[0].hi < roots[1].lo

    def test_double_root(self):
        roots = isolate_real_roots([0, 0, 1])
        assert len(roots) == 1
        assert roots[0].multiplicity == 2
        assert roots[0].to_float() == pytest.approx(0.0, abs=1e-15)

    def test_no_real_roots(self):
        assert isolate_real_roots([1, 0, 1]) == []

    def test_width_and_sign_change(self):
        (root,) = [r for r in isolate_real_roots([-2, 0, 1], bits=40) if r.lo > 0]
        assert root.width <= Fraction(1, 2 ** 40)
        assert root.lo ** 2 < 2 < root.hi ** 2

    def test_default_width_follows_settings(self):
        assert DEFAULT_WIDTH_BITS == settings.ROOT_WIDTH_BITS
        for root in isolate_real_roots([-2, 0, 1]):
            assert root.width <= Fraction(1, 2 ** settings.ROOT_WIDTH_BITS)

    def test_mixed_multiplicities(self):
        # (t - 1)^2 (t + 2)
        roots = isolate_real_roots([2, -3, 0, 1])
        assert [(round(r.to_float(), 9), r.multiplicity) for r in roots] == [(-2.0, 1), (1.0, 2)]

    def test_univariate_poly_input(self):
        roots = isolate_real_roots(parse_poly("1 - 3*x^2"))
        assert len(roots) == 2

    def test_zero_polynomial(self):
        with pytest.raises(DegenerateInputError):
            isolate_real_roots([0, 0])

    def test_square_free_decomposition(self):
        # t^2 (t - 1)^3
        parts = dict((tuple(p), m) for p, m in square_free_decomposition([0, 0, -1, 3, -3, 1]))
        assert sorted(parts.values()) == [2, 3]


class TestLinearFactors:

    def test_three_lines(self):
        factorization = real_linear_factors(parse_poly("x^3 - 3*x*y^2"))
        assert factorization.R == 3
        assert factorization.all_simple
        thetas = [f.theta for f in factorization.factors]
        assert thetas == pytest.approx([math.pi / 6, math.pi / 2, 5 * math.pi / 6], abs=1e-12)

    def test_factor_u_is_exact(self):
        factorization = real_linear_factors(parse_poly("x^3 - 3*x*y^2"))
        u_factor = factorization.factors[1]
        assert u_factor.alpha == 0 and u_factor.beta == 1
        assert u_factor.is_rational
        assert u_factor.t_value is None
        assert not factorization.factors[0].is_rational

    def test_definite_form_has_none(self):
        assert real_linear_factors(parse_poly("x^2 + y^2")).R == 0

    def test_saddle(self):
        factorization = real_linear_factors(parse_poly("x*y"))
        assert factorization.R == 2
        assert [f.theta for f in factorization.factors] == pytest.approx([0.0, math.pi / 2])
        assert all(f.is_rational for f in factorization.factors)

    def test_repeated_factor(self):
        factorization = real_linear_factors(parse_poly("(x - y)^2*(x + y)"))
        assert factorization.R == 2
        assert not factorization.all_simple
        assert [f.multiplicity for f in factorization.factors] == [2, 1]

    def test_vanishes_exactly(self):
        fn = parse_poly("x^3 - 3*x*y^2")
        for factor in real_linear_factors(fn).factors:
            assert factor.vanishes(fn)
            assert not factor.vanishes(parse_poly("x^2 + y^2"))

    def test_rejects_inhomogeneous(self):
        with pytest.raises(InvalidArgumentError):
            real_linear_factors(parse_poly("x^2 + y"))
        with pytest.raises(DegenerateInputError):
            real_linear_factors(BiPoly())


class TestResidue:
    """Arithmetic in Q[t]/(t^2 - 2)."""

    @pytest.fixture
    def sqrt2(self):
        return Residue.generator([-2, 0, 1])

    def test_square(self, sqrt2):
        assert sqrt2 * sqrt2 == 2
        assert (sqrt2 * sqrt2).is_rational()
        assert (sqrt2 * sqrt2).rational_value() == 2

    def test_difference_of_squares(self, sqrt2):
        assert (sqrt2 + 1) * (sqrt2 - 1) == 1

    def test_powers_and_division(self, sqrt2):
        assert sqrt2 ** 4 == 4
        assert (sqrt2 * 3) / 3 == sqrt2
        assert not sqrt2.is_rational()

    def test_float_value(self, sqrt2):
        assert (sqrt2 ** 3 + 1).to_float(math.sqrt(2)) == pytest.approx(2 * math.sqrt(2) + 1)

    def test_mismatched_moduli(self, sqrt2):
        other = Residue.generator([-3, 0, 1])
        with pytest.raises(InvalidArgumentError):
            sqrt2 + other

    def test_poly_with_residue_coefficients(self, sqrt2):
        X, Y = BiPoly.gens()
        g = parse_poly("x^2 - 2*y^2").compose([X * sqrt2, Y])
        assert g.coefficient((2, 0)) == 2
