"""
Half-integer index of a line field by winding.

Both null lines of a dx^2 + b dx dy + c dy^2 sit at (psi +- s)/2 with
psi = arg(a - c, b) and a spread s in (0, pi) wherever the discriminant is
positive, so each line turns by half the turn of psi. The index in halves
is therefore the number of full turns of the coefficient vector (a - c, b),
which stays defined when the two lines nearly merge. Sampling doubles until
every step of psi is below pi/4; the result is certified when the vector
stays away from zero and the same count comes out at radius r and r/2.
"""
import logging
import math
from typing import Callable, Optional, Tuple

import numpy as np

from umbilic_atlas import settings
from umbilic_atlas.statuses import InvalidArgumentError
from umbilics.directions import root_angles
from umbilics.models import WindingResult

logger = logging.getLogger('umbilics')

MAX_STEP = math.pi / 4
# Smallest |(a - c, b)| on the circle, relative to its largest value.
MIN_VECTOR_RATIO = 1e-10


def as_evaluator(source) -> Callable:
    """PrincipalForm, ChartForm or a bare (xs, ys) -> (a, b, c) callable."""
    if hasattr(source, 'evaluator'):
        return source.evaluator()
    if callable(source):
        return source
    raise InvalidArgumentError(f"cannot evaluate a form from {type(source).__name__}")


def _track(evaluate: Callable, center: Tuple[float, float], radius: float,
           samples: int) -> Tuple[float, float, float, bool]:
    """
    Accumulated turn of (a - c, b), its largest step, the smallest relative
    length of the vector and whether the discriminant went negative.
    """
    phi = np.linspace(0.0, 2.0 * np.pi, samples, endpoint=False)
    xs = center[0] + radius * np.cos(phi)
    ys = center[1] + radius * np.sin(phi)
    a, b, c = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in evaluate(xs, ys)), xs)[:3]
    p = a - c
    q = b
    psi = np.arctan2(q, p)
    steps = np.diff(np.append(psi, psi[0]))
    steps = np.mod(steps + np.pi, 2.0 * np.pi) - np.pi
    norm = np.hypot(p, q)
    top = float(norm.max())
    ratio = float(norm.min()) / top if top > 0 else 0.0
    _, _, negative = root_angles(a, b, c)
    return float(steps.sum()), float(np.abs(steps).max()), ratio, bool(np.any(negative))


def _winding_once(evaluate: Callable, center, radius: float,
                  samples: int) -> Tuple[int, bool, int, float, bool]:
    n = max(samples, settings.WINDING_MIN_SAMPLES)
    while True:
        total, max_step, ratio, negative = _track(evaluate, center, radius, n)
        k = round(total / (2.0 * math.pi))
        if ratio <= MIN_VECTOR_RATIO:
            logger.warning(f"Winding at {center} r={radius:g}: the form nearly vanishes on the circle "
                           f"(ratio {ratio:.2e})")
            return k, False, n, max_step, negative
        if max_step < MAX_STEP:
            closed = abs(total - 2.0 * math.pi * k) < MAX_STEP
            return k, closed, n, max_step, negative
        if n * 2 > settings.WINDING_MAX_SAMPLES:
            logger.warning(f"Winding at {center} r={radius:g}: step {max_step:.3f} "
                           f"still too large at {n} samples")
            return k, False, n, max_step, negative
        n *= 2


def winding_index(source, center: Tuple[float, float] = (0.0, 0.0),
                  radius: Optional[float] = None, samples: Optional[int] = None,
                  certify: bool = True) -> WindingResult:
    """
    Index (in halves) of the line field of `source` around `center`.

    The circle must enclose no singular point other than the centre.
    """
    radius = settings.WINDING_RADIUS if radius is None else radius
    samples = settings.WINDING_SAMPLES if samples is None else samples
    if radius <= 0:
        raise InvalidArgumentError("winding radius must be positive")
    evaluate = as_evaluator(source)
    center = (float(center[0]), float(center[1]))

    k, closed, used, max_step, negative = _winding_once(evaluate, center, radius, samples)
    certified = closed
    if certify:
        k_half, closed_half, used_half, step_half, neg_half = _winding_once(
            evaluate, center, radius / 2, samples)
        certified = closed and closed_half and k == k_half
        negative = negative or neg_half
        max_step = max(max_step, step_half)
        used = max(used, used_half)
        if k != k_half:
            logger.warning(f"Winding at {center}: {k} halves at r={radius:g} "
                           f"but {k_half} at r={radius / 2:g}")
    if negative:
        logger.warning(f"Negative discriminant on the winding circle around {center}")
    logger.debug(f"Winding at {center} r={radius:g}: {k} halves, {used} samples, certified={certified}")
    return WindingResult(k, certified, radius, used, max_step, negative)
