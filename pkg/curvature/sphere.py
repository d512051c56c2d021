"""
Extension of the principal form to the Poincare sphere.

With F(u, v, w) = sum w^(n-i) f_i(u, v) (w stands for omega), the pullback
of the principal form to the sphere, multiplied by the power of w that makes
it analytic, is the quadratic form with symmetric matrix

    | wA                 wB/2               -(uA + vB/2) |
    | wB/2               wC                 -(uB/2 + vC) |
    | -(uA + vB/2)       -(uB/2 + vC)        T           |

where
    A = F_uv F_u^2 - F_uu F_u F_v + lam w^(2(n-1)) F_uv
    B = F_vv F_u^2 - F_uu F_v^2 + lam w^(2(n-1)) (F_vv - F_uu)
    C = F_vv F_u F_v - F_uv F_v^2 - lam w^(2(n-1)) F_uv
    T = (u^2 A + u v B + v^2 C) / w.

A, B and C are homogeneous of degree 3n - 4 and T of degree 3n - 3.
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Sequence, Tuple

import numpy as np

from polynomials.models import Poly, TriPoly
from umbilic_atlas.statuses import DegenerateInputError, InvalidArgumentError, InvariantViolation

logger = logging.getLogger('curvature')


@dataclass(frozen=True)
class ExtendedForm:
    A: Poly
    B: Poly
    C: Poly
    T: Poly
    T1: Poly
    n: int
    F: Poly = field(repr=False)
    lam: object = field(default=Fraction(1), repr=False)

    def entries(self, point: Sequence) -> Dict[str, object]:
        """The six distinct matrix entries at a point (exact or float)."""
        u, v, w = point
        A = self.A.evaluate(point)
        B = self.B.evaluate(point)
        C = self.C.evaluate(point)
        T = self.T.evaluate(point)
        return {
            'uu': w * A,
            'uv': w * B / 2,
            'vv': w * C,
            'uw': -(u * A + v * B / 2),
            'vw': -(u * B / 2 + v * C),
            'ww': T,
        }

    def matrix_at(self, point: Sequence[float]) -> np.ndarray:
        e = {k: float(v) for k, v in self.entries(tuple(float(c) for c in point)).items()}
        return np.array([
            [e['uu'], e['uv'], e['uw']],
            [e['uv'], e['vv'], e['vw']],
            [e['uw'], e['vw'], e['ww']],
        ])

    def flat_point(self, point: Sequence) -> bool:
        """All coefficients of the sphere form vanish at the point."""
        return all(v == 0 for v in self.entries(point).values())


@dataclass(frozen=True)
class SpherePoint:
    u: float
    v: float
    w: float

    def __post_init__(self):
        if abs(self.u * self.u + self.v * self.v + self.w * self.w - 1.0) >= 1e-12:
            raise InvariantViolation(f"({self.u}, {self.v}, {self.w}) is not on the unit sphere")

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.u, self.v, self.w)

    def antipode(self) -> 'SpherePoint':
        return SpherePoint(-self.u, -self.v, -self.w)


def build_F(f: Poly) -> TriPoly:
    """F(u, v, w) = sum w^(n-i) f_i(u, v); homogeneous of degree n with F(x, y, 1) = f."""
    n = f.degree()
    if n < 2:
        raise DegenerateInputError("the sphere extension needs degree >= 2")
    n = int(n)
    return TriPoly({(i, j, n - i - j): c for (i, j), c in f.terms.items()})


def extended_form(f: Poly, lam=Fraction(1)) -> ExtendedForm:
    """
    Coefficients A, B, C, T of the sphere form.

    T is the exact quotient of u^2 A + u v B + v^2 C by w; a non-zero
    remainder, or a homogeneity failure, raises InvariantViolation.
    """
    F = build_F(f)
    n = int(f.degree())
    u, v, w = TriPoly.gens()
    Fu, Fv = F.partial('u'), F.partial('v')
    Fuu, Fuv, Fvv = F.partial('u', 2), Fu.partial('v'), F.partial('v', 2)
    W = (w ** (2 * (n - 1))) * lam

    Fu2 = Fu * Fu
    Fv2 = Fv * Fv
    A = Fuv * Fu2 - Fuu * Fu * Fv + W * Fuv
    B = Fvv * Fu2 - Fuu * Fv2 + W * (Fvv - Fuu)
    C = Fvv * Fu * Fv - Fuv * Fv2 - W * Fuv

    numerator = u * u * A + u * v * B + v * v * C
    T = numerator.exact_divide_monomial('w', 1)
    T1 = T - T.restrict('w', 0)

    for name, poly, deg in (('A', A, 3 * n - 4), ('B', B, 3 * n - 4), ('C', C, 3 * n - 4), ('T', T, 3 * n - 3)):
        if not poly.is_zero() and (not poly.is_homogeneous() or poly.degree() != deg):
            raise InvariantViolation(f"{name} is not homogeneous of degree {deg}")
    logger.debug(f"Extended form for n={n}: |A|={len(A)}, |B|={len(B)}, |C|={len(C)}, |T|={len(T)}")
    return ExtendedForm(A, B, C, T, T1, n, F, lam)


def project(p: Tuple[float, float], sheet: int = 1) -> SpherePoint:
    """Central projection of the plane onto the upper (1) or lower (2) hemisphere."""
    if sheet not in (1, 2):
        raise InvalidArgumentError("sheet must be 1 or 2")
    x, y = float(p[0]), float(p[1])
    r = math.sqrt(1.0 + x * x + y * y)
    s = 1.0 if sheet == 1 else -1.0
    return SpherePoint(s * x / r, s * y / r, s / r)


def unproject(q: SpherePoint) -> Tuple[float, float]:
    """Inverse of project off the equator."""
    if q.w == 0:
        raise InvalidArgumentError("equator points have no finite preimage")
    return (q.u / q.w, q.v / q.w)
