"""
Null directions of a binary quadratic form a dx^2 + b dx dy + c dy^2.

For the direction (cos phi, sin phi) the form equals

    (a + c)/2 + rho cos(2 phi - psi),   rho = |((a - c)/2, b/2)|,

so the two roots are phi = (psi +- arccos(-(a + c) / (2 rho))) / 2, taken
modulo pi. Branch 1 is the root with the smaller angle in [0, pi).
"""
import logging
import math
from typing import Optional, Tuple

import numpy as np

from curvature.forms import PrincipalForm, fundamental_forms
from polynomials.models import Poly
from umbilic_atlas import settings
from umbilic_atlas.statuses import InvalidArgumentError, UmbilicError

logger = logging.getLogger('umbilics')

HALF_PI = math.pi / 2


def wrap_half_pi(delta):
    """Wrap an angle difference into (-pi/2, pi/2]."""
    return np.pi / 2 - np.mod(np.pi / 2 - delta, np.pi)


def root_angles(a, b, c) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Vectorised root angles (theta1, theta2) in [0, pi) with theta1 <= theta2,
    and a mask of points with negative discriminant (clamped to a double root).
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    c = np.asarray(c, dtype=float)
    half_diff = (a - c) / 2
    rho = np.hypot(half_diff, b / 2)
    psi = np.arctan2(b / 2, half_diff)
    with np.errstate(divide='ignore', invalid='ignore'):
        ratio = np.where(rho > 0, -(a + c) / (2 * rho), 0.0)
    negative = (np.abs(ratio) > 1 + 1e-9) | ((rho == 0) & (a + c != 0))
    spread = np.arccos(np.clip(ratio, -1.0, 1.0))
    t1 = np.mod((psi - spread) / 2, np.pi)
    t2 = np.mod((psi + spread) / 2, np.pi)

    # Exact axis roots when a or c vanishes.
    zero_a = (a == 0) & ((b != 0) | (c != 0))
    other_a = np.mod(np.arctan2(-b, c), np.pi)
    t1 = np.where(zero_a, 0.0, t1)
    t2 = np.where(zero_a, other_a, t2)
    zero_c = (c == 0) & (a != 0)
    other_c = np.mod(np.arctan2(-a, b), np.pi)
    t1 = np.where(zero_c, HALF_PI, t1)
    t2 = np.where(zero_c, other_c, t2)

    lo = np.minimum(t1, t2)
    hi = np.maximum(t1, t2)
    return lo, hi, negative


def root_directions(a: float, b: float, c: float) -> Tuple[float, float]:
    """Both root angles at one point; raises UmbilicError when the form vanishes."""
    if a == 0 and b == 0 and c == 0:
        raise UmbilicError("direction undefined: all coefficients vanish")
    t1, t2, negative = root_angles(a, b, c)
    if bool(negative):
        logger.warning(f"Negative discriminant {b * b - 4 * a * c:.3e}; using the double root")
    return float(t1), float(t2)


def closest_root(theta1: float, theta2: float, prev_angle: float) -> float:
    d1 = abs(float(wrap_half_pi(theta1 - prev_angle)))
    d2 = abs(float(wrap_half_pi(theta2 - prev_angle)))
    return theta1 if d1 <= d2 else theta2


def _coefficients(source, p: Tuple[float, float]) -> Tuple[float, float, float]:
    if hasattr(source, 'at'):
        return source.at(p)
    a, b, c = source(np.float64(p[0]), np.float64(p[1]))
    return float(a), float(b), float(c)


def _is_umbilic(source, p: Tuple[float, float], coeffs) -> bool:
    if all(v == 0 for v in coeffs):
        return True
    if isinstance(source, PrincipalForm):
        eps = settings.UMBILIC_TOL * (1.0 + source.scale())
        return max(source.scaled_residuals(p)) < eps
    return False


def direction_at(source, p: Tuple[float, float], branch: int = 1,
                 prev: Optional[Tuple[float, float]] = None) -> Tuple[float, float]:
    """
    Unit direction of the chosen branch at p.

    Without `prev` the branch label decides; with `prev` the root closest to
    prev modulo pi is taken and its sign is aligned with prev.
    """
    if branch not in (1, 2):
        raise InvalidArgumentError("branch must be 1 or 2")
    coeffs = _coefficients(source, p)
    if _is_umbilic(source, p, coeffs):
        raise UmbilicError(f"direction undefined at umbilic ({p[0]:.6g}, {p[1]:.6g})",
                           details={'point': list(p)})
    t1, t2 = root_directions(*coeffs)
    if prev is None:
        theta = t1 if branch == 1 else t2
        return (math.cos(theta), math.sin(theta))
    theta = closest_root(t1, t2, math.atan2(prev[1], prev[0]))
    d = (math.cos(theta), math.sin(theta))
    if d[0] * prev[0] + d[1] * prev[1] < 0:
        d = (-d[0], -d[1])
    return d


def metric_angle(f: Poly, p: Tuple[float, float], d1: Tuple[float, float],
                 d2: Tuple[float, float]) -> float:
    """Angle on the graph between the lifts (dx, dy, f_x dx + f_y dy) of two plane directions."""
    E, F, G, _, _, _ = fundamental_forms(f, p)
    dot = E * d1[0] * d2[0] + F * (d1[0] * d2[1] + d1[1] * d2[0]) + G * d1[1] * d2[1]
    n1 = math.sqrt(E * d1[0] ** 2 + 2 * F * d1[0] * d1[1] + G * d1[1] ** 2)
    n2 = math.sqrt(E * d2[0] ** 2 + 2 * F * d2[0] * d2[1] + G * d2[1] ** 2)
    return math.acos(max(-1.0, min(1.0, dot / (n1 * n2))))
