"""
Exact Lemon certificates for umbilics at infinity.

The direction (alpha, beta) of a real linear factor of f_n is moved onto the
axis by g(U, V) = f(alpha U - beta V, beta U + alpha V). The map scales by
sqrt(lam), lam = alpha^2 + beta^2, so g is a similar copy of the graph and
its principal form is the lam-weighted form (see curvature.forms). Along an
irrational direction beta is a Residue, and every quantity below is exact.

Only the first-order jet of the chart form at (1, 0, 0) is needed, so the
extended coefficients are built with products truncated at degree 2 in the
chart variables (v, w).
"""
import logging
from fractions import Fraction
from typing import Dict, Tuple

from curvature.sphere import build_F
from polynomials.factors import LinearFactor
from polynomials.models import BiPoly, ChartPoly, Poly
from umbilic_atlas.statuses import InvariantViolation
from umbilics.models import LemonCertificate

logger = logging.getLogger('umbilics')

JET_DEGREE = 2


def rotate_to_axis(f: Poly, factor: LinearFactor) -> Tuple[Poly, object]:
    """(g, lam) with g_n(1, 0) = 0."""
    alpha, beta = factor.alpha, factor.beta
    X, Y = BiPoly.gens()
    g = f.compose([X * alpha - Y * beta, X * beta + Y * alpha])
    lam = alpha * alpha + beta * beta
    return g, lam


def leading_coefficients(g: Poly, n: int) -> Tuple[object, object]:
    """a = coefficient of U^(n-1) V in g_n, b = coefficient of U^(n-1) in g_(n-1)."""
    parts = g.homogeneous_components()
    a = parts[n].coefficient((n - 1, 1))
    b = parts[n - 1].coefficient((n - 1, 0))
    return a, b


def _at_u1(p: Poly) -> ChartPoly:
    return p.restrict('u', 1).drop_variable('u')


def chart_jets(g: Poly, lam, n: int) -> Dict[str, Poly]:
    """Degree-2 jets at (v, w) = (0, 0) of A, B, C and the degree-1 jet of T in the chart u = 1."""
    F = build_F(g)
    Fu, Fv = F.partial('u'), F.partial('v')
    Fu, Fv, Fuu, Fuv, Fvv = (_at_u1(d) for d in (Fu, Fv, F.partial('u', 2), Fu.partial('v'), F.partial('v', 2)))

    def mul(*factors):
        out = factors[0].truncate(JET_DEGREE)
        for p in factors[1:]:
            out = out.mul_truncated(p, JET_DEGREE)
        return out

    W = ChartPoly({(0, 2 * (n - 1)): lam}).truncate(JET_DEGREE)
    A = mul(Fuv, Fu, Fu) - mul(Fuu, Fu, Fv) + mul(W, Fuv)
    B = mul(Fvv, Fu, Fu) - mul(Fuu, Fv, Fv) + mul(W, Fvv - Fuu)
    C = mul(Fvv, Fu, Fv) - mul(Fuv, Fv, Fv) - mul(W, Fuv)
    v, _ = ChartPoly.gens()
    N = A + mul(v, B) + mul(v, v, C)
    T = N.exact_divide_monomial('w', 1).truncate(JET_DEGREE - 1)
    return {'A': A, 'B': B, 'C': C, 'Q': B + mul(v, C) * 2, 'T': T}


def _linear(p: Poly) -> Tuple[object, object]:
    return (p.coefficient((1, 0)), p.coefficient((0, 1)))


def _quadratic_det(alpha, beta, gamma):
    """Determinant of the second-derivative matrix of alpha v^2 + beta v w + gamma w^2."""
    return 4 * alpha * gamma - beta * beta


def lemon_certificate(f: Poly, factor: LinearFactor, n: int, coprime: bool = True) -> LemonCertificate:
    """
    Exact first-order certificate at the equator point of `factor`.

    `coprime` is the caller's verdict on f_n and f_(n-1) sharing no real
    linear factor; it only matters for n >= 3. Raises InvariantViolation
    when the point is not flat.
    """
    g, lam = rotate_to_axis(f, factor)
    a, b = leading_coefficients(g, n)
    jets = chart_jets(g, lam, n)
    A, B, C, Q, T = (jets[k] for k in ('A', 'B', 'C', 'Q', 'T'))

    if not (factor.value_vanishes(A.constant_term()) and factor.value_vanishes(B.constant_term())
            and factor.value_vanishes(T.constant_term())):
        raise InvariantViolation(f"equator point at theta={factor.theta:.6f} is not flat")

    constC = C.constant_term()
    linB, linQ, linT = _linear(B), _linear(Q), _linear(T)
    expected_Tw = (n - 1) ** 2 * a * b * b + (lam * a if n == 2 else 0)
    matches = {
        'constC': constC == -(n - 1) * a ** 3,
        'linB_v': linB[0] == -(n - 1) * (n - 2) * a ** 3,
        'linB_w': linB[1] == -(n - 1) * (n - 2) * a * a * b,
        'linQ_v': linQ[0] == -n * (n - 1) * a ** 3,
        'linT_v': linT[0] == n * (n - 1) * a * a * b,
        'linT_w': linT[1] == expected_Tw,
    }

    # Discriminant Q^2 - 4 w P S to second order, with P = C.
    P0 = constC
    true_det = _quadratic_det(linQ[0] * linQ[0],
                              2 * linQ[0] * linQ[1] - 4 * P0 * linT[0],
                              linQ[1] * linQ[1] - 4 * P0 * linT[1])
    # The linear model keeps only the v term of Q.
    model_det = _quadratic_det(linQ[0] * linQ[0], -4 * P0 * linT[0], -4 * P0 * linT[1])

    a_nonzero = not factor.value_vanishes(a)
    b_nonzero = not factor.value_vanishes(b)
    normalized = None
    if n == 2:
        matches['model_det'] = model_det == 64 * a ** 10 * lam
        positive = a_nonzero
        hypotheses = a_nonzero and factor.multiplicity == 1
    else:
        # (v, w) = (sqrt(n-2) b V - b W, a W) scales the determinant by (n-2) a^2 b^2;
        # dividing the form by Nf scales it by Nf**-4 = N**-2.
        N = (n - 1) ** 2 * (n - 2) * a ** 6 * b * b
        transformed = model_det * (n - 2) * a * a * b * b
        matches['model_det'] = transformed == 16 * n * n * N * N
        if matches['model_det'] and b_nonzero:
            normalized = Fraction(16 * n * n)
        positive = a_nonzero and b_nonzero
        hypotheses = a_nonzero and b_nonzero and coprime and factor.multiplicity == 1

    failed = [k for k, ok in matches.items() if not ok]
    if failed:
        logger.error(f"Certificate closed forms fail at theta={factor.theta:.6f}: {failed}")
    logger.debug(f"Lemon certificate at theta={factor.theta:.6f}: hypotheses={hypotheses}, positive={positive}")
    return LemonCertificate(n, a, b, lam, constC, linB, linQ, linT, true_det, model_det,
                            normalized, matches, positive, hypotheses)
