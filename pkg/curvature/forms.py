"""
The form of principal curvatures of a polynomial graph, and its Hessian.

For z = f(x, y) the principal directions are the null directions of

    At dx^2 + Bt dx dy + Ct dy^2

with At = lam*f_xy + f_xy f_x^2 - f_x f_y f_xx,
     Bt = f_yy (lam + f_x^2) - f_xx (lam + f_y^2),
     Ct = f_x f_y f_yy - lam*f_xy - f_xy f_y^2.

lam = 1 is the graph itself. A general positive lam is the same graph after
the homothety that turns an unnormalised rotation (u, v) -> (a u - b v,
b u + a v), lam = a^2 + b^2, back into an isometry; the form is then off
only by the positive factor lam**-3/2. The common factor
1/sqrt(1 + f_x^2 + f_y^2) of the curvature equation is not stored.
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Optional, Tuple

import numpy as np

from polynomials.factors import real_linear_factors
from polynomials.models import BiPoly, Poly
from umbilic_atlas import settings
from umbilic_atlas.statuses import (DegenerateInputError, FormType, InvariantViolation,
                                    PointClass)

logger = logging.getLogger('curvature')

FormEvaluator = Callable[[np.ndarray, np.ndarray], Tuple[np.ndarray, np.ndarray, np.ndarray]]


@dataclass(frozen=True)
class PrincipalForm:
    Atilde: Poly
    Btilde: Poly
    Ctilde: Poly
    n: int
    f: Poly = field(repr=False)
    lam: object = field(default=Fraction(1), repr=False)

    @property
    def coefficients(self) -> Tuple[Poly, Poly, Poly]:
        return (self.Atilde, self.Btilde, self.Ctilde)

    @cached_property
    def _compiled(self):
        return tuple(p.compile() for p in self.coefficients)

    @cached_property
    def _compiled_abs(self):
        return tuple(p.compile(absolute=True) for p in self.coefficients)

    def evaluator(self) -> FormEvaluator:
        """(xs, ys) -> (a, b, c) arrays for a dx^2 + b dx dy + c dy^2."""
        ca, cb, cc = self._compiled

        def evaluate(xs, ys):
            return ca(xs, ys), cb(xs, ys), cc(xs, ys)
        return evaluate

    def at(self, p: Tuple[float, float]) -> Tuple[float, float, float]:
        a, b, c = self.evaluator()(np.float64(p[0]), np.float64(p[1]))
        return float(a), float(b), float(c)

    def scaled_residuals(self, p: Tuple[float, float]) -> Tuple[float, float, float]:
        """|coefficient(p)| / max(1, sum |c_k m_k(p)|) for the three coefficients."""
        x, y = np.float64(p[0]), np.float64(p[1])
        out = []
        for value, scale in zip(self._compiled, self._compiled_abs):
            out.append(float(abs(value(x, y)) / max(1.0, float(scale(x, y)))))
        return tuple(out)

    def scale(self) -> float:
        return max(p.max_abs_coefficient() for p in self.coefficients)


@dataclass(frozen=True)
class ProjectiveHessian:
    Hf: Poly
    n: int

    @property
    def degree(self) -> int:
        return 2 * self.n - 4


@dataclass(frozen=True)
class FormClassification:
    kind: FormType
    power_of_linear_form: bool
    hessian: Poly = field(repr=False)


def _first_derivatives(f: Poly):
    x, y = f.variables
    fx, fy = f.partial(x), f.partial(y)
    return fx, fy, f.partial(x, 2), f.partial(x).partial(y), f.partial(y, 2)


def principal_form(f: Poly, lam=Fraction(1)) -> PrincipalForm:
    """
    Coefficients of the form of principal curvatures.

    Raises DegenerateInputError when deg f < 2 (the graph is a plane).
    """
    n = f.degree()
    if n < 2:
        raise DegenerateInputError(f"principal form needs degree >= 2, got {f.to_text()!r}")
    fx, fy, fxx, fxy, fyy = _first_derivatives(f)
    fx2 = fx * fx
    fy2 = fy * fy
    fxfy = fx * fy
    A = fxy * lam + fxy * fx2 - fxfy * fxx
    B = fyy * (fx2 + lam) - fxx * (fy2 + lam)
    C = fxfy * fyy - fxy * lam - fxy * fy2
    logger.debug(f"Principal form of degree-{n} polynomial: {len(A)}, {len(B)}, {len(C)} terms")
    return PrincipalForm(A, B, C, int(n), f, lam)


def hessian_det(f: Poly) -> Poly:
    """f_xx f_yy - f_xy^2, exact."""
    x, y = f.variables
    fxx = f.partial(x, 2)
    fyy = f.partial(y, 2)
    fxy = f.partial(x).partial(y)
    return fxx * fyy - fxy * fxy


def homogenize_hessian(f: Poly) -> ProjectiveHessian:
    """
    Homogenize |Hess f| to degree 2n - 4 in (x, y, z).

    Raises DegenerateInputError when |Hess f| vanishes identically.
    """
    n = int(f.degree())
    H = hessian_det(f)
    if H.is_zero():
        raise DegenerateInputError("the Hessian function vanishes identically")
    top = 2 * n - 4
    if H.degree() > top:
        raise InvariantViolation(f"deg |Hess f| = {H.degree()} exceeds 2n-4 = {top}")
    variables = tuple(f.variables) + ('z',)
    Hf = Poly({(i, j, top - i - j): c for (i, j), c in H.terms.items()}, variables)

    components = f.homogeneous_components()
    if Hf.restrict('z', 1).drop_variable('z') != H:
        raise InvariantViolation("Hf(x, y, 1) differs from |Hess f|")
    if Hf.restrict('z', 0).drop_variable('z') != hessian_det(components[n]):
        raise InvariantViolation("Hf(x, y, 0) differs from |Hess f_n|")
    return ProjectiveHessian(Hf, n)


def classify_point(f: Poly, p: Tuple[float, float], eps: Optional[float] = None) -> PointClass:
    """Elliptic, parabolic or hyperbolic by the sign of |Hess f|(p)."""
    H = hessian_det(f)
    if eps is None:
        eps = settings.CLASS_EPS * (1.0 + H.max_abs_coefficient())
    value = float(H.compile()(np.float64(p[0]), np.float64(p[1])))
    if abs(value) <= eps:
        return PointClass.PARABOLIC
    return PointClass.ELLIPTIC if value > 0 else PointClass.HYPERBOLIC


def classify_form_type(fn: Poly) -> FormClassification:
    """
    Elliptic (hyperbolic) when |Hess fn| has no real linear factors and is
    nonnegative (nonpositive); Neither otherwise.

    A form whose Hessian vanishes identically is a power of a linear form
    and is reported as Neither with the flag set.
    """
    if not fn.is_homogeneous() or fn.degree() < 2:
        raise DegenerateInputError("classify_form_type expects a homogeneous form of degree >= 2")
    H = hessian_det(fn)
    if H.is_zero():
        logger.info(f"{fn.to_text()} is a power of a linear form")
        return FormClassification(FormType.NEITHER, True, H)
    if H.degree() > 0 and real_linear_factors(H).count > 0:
        return FormClassification(FormType.NEITHER, False, H)
    # No real zeros on the circle: the sign is the sign of H(1, 0).
    lead = H.coefficient((int(H.degree()), 0))
    kind = FormType.ELLIPTIC if lead > 0 else FormType.HYPERBOLIC
    return FormClassification(kind, False, H)


def hessian_curve_is_compact(f: Poly) -> bool:
    """The curve |Hess f| = 0 is bounded iff |Hess f_n| has no real zeros off the origin."""
    n = int(f.degree())
    Hn = hessian_det(f.homogeneous_components()[n])
    if Hn.is_zero():
        return False
    if Hn.degree() == 0:
        return True
    return real_linear_factors(Hn).count == 0


def fundamental_forms(f: Poly, p: Tuple[float, float]) -> Tuple[float, ...]:
    """(E, F, G, e, f, g) of the graph at p, floats."""
    fx, fy, fxx, fxy, fyy = (d.compile()(np.float64(p[0]), np.float64(p[1]))
                             for d in _first_derivatives(f))
    W = math.sqrt(1.0 + fx * fx + fy * fy)
    return (1.0 + fx * fx, fx * fy, 1.0 + fy * fy, fxx / W, fxy / W, fyy / W)


def principal_curvature_coefficients(f: Poly, p: Tuple[float, float]) -> Tuple[float, float, float]:
    """(E f - e F, E g - e G, F g - f G): the principal form times 1/sqrt(1 + |grad f|^2)."""
    E, F, G, e, ff, g = fundamental_forms(f, p)
    return (E * ff - e * F, E * g - e * G, F * g - ff * G)


def as_plane_poly(p: Poly) -> BiPoly:
    """Relabel a bivariate polynomial onto (x, y)."""
    if p.nvars != 2:
        raise DegenerateInputError("expected a bivariate polynomial")
    return BiPoly(dict(p.terms))
