"""
Finite umbilic points: common real zeros of the principal form coefficients.

Candidates come from exact elimination. The resultant in y of two
coefficients is a polynomial in x whose real roots are isolated exactly; at
each root the y-values are the real roots of one coefficient restricted to
that x. Every candidate is then refined by Gauss-Newton on all three
coefficients and kept when its scaled residuals are below the tolerance.

The elimination is global; the search box only selects which points are
reported. It doubles until it contains every located point or reaches
MAX_BOX_HALF_WIDTH.
"""
import concurrent.futures
import logging
import math
from itertools import combinations
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from curvature.forms import PrincipalForm, classify_point
from polynomials.models import Poly
from polynomials.resultants import resultant
from polynomials.roots import gcd, isolate_real_roots, trim
from umbilic_atlas import settings
from umbilic_atlas.statuses import DegenerateInputError, InvalidArgumentError
from umbilics.models import FiniteSearch, UmbilicPoint
from umbilics.winding import winding_index

logger = logging.getLogger('umbilics')

Box = Tuple[float, float, float, float]

NEWTON_MAX_ITER = 200
MERGE_DISTANCE = 1e-5


def validate_box(box: Sequence[float]) -> Box:
    if len(box) != 4:
        raise InvalidArgumentError("box must be x0,x1,y0,y1")
    x0, x1, y0, y1 = (float(v) for v in box)
    if not (x0 < x1 and y0 < y1):
        raise InvalidArgumentError(f"empty box {box}")
    return (x0, x1, y0, y1)


def in_box(p: Tuple[float, float], box: Box) -> bool:
    return box[0] <= p[0] <= box[1] and box[2] <= p[1] <= box[3]


def expand_box(box: Box, factor: float = 2.0) -> Box:
    cx, cy = (box[0] + box[1]) / 2, (box[2] + box[3]) / 2
    hx, hy = (box[1] - box[0]) / 2 * factor, (box[3] - box[2]) / 2 * factor
    return (cx - hx, cx + hx, cy - hy, cy + hy)


def _half_width(box: Box) -> float:
    return max(box[1] - box[0], box[3] - box[2]) / 2


class _System:
    """Float evaluation of the three coefficients and their Jacobian."""

    def __init__(self, form: PrincipalForm):
        self.form = form
        polys = form.coefficients
        x, y = polys[0].variables
        self.values = [p.compile() for p in polys]
        self.jacobian = [(p.partial(x).compile(), p.partial(y).compile()) for p in polys]

    def residual(self, p: np.ndarray) -> np.ndarray:
        return np.array([float(v(p[0], p[1])) for v in self.values])

    def jac(self, p: np.ndarray) -> np.ndarray:
        return np.array([[float(dx(p[0], p[1])), float(dy(p[0], p[1]))] for dx, dy in self.jacobian])

    def refine(self, p: Tuple[float, float]) -> np.ndarray:
        """Gauss-Newton on the overdetermined system."""
        q = np.array(p, dtype=float)
        for _ in range(NEWTON_MAX_ITER):
            r = self.residual(q)
            if not np.all(np.isfinite(r)):
                break
            step, *_ = np.linalg.lstsq(self.jac(q), -r, rcond=None)
            if not np.all(np.isfinite(step)):
                break
            q = q + step
            if np.linalg.norm(step) <= 1e-15 * (1.0 + np.linalg.norm(q)):
                break
        return q


def _x_univariate(p: Poly) -> List:
    """Coefficients in x (low to high) of a y-free polynomial."""
    return p.univariate_coefficients(p.variables[0])


def _eliminate(p: Poly, q: Poly) -> Optional[List]:
    """x-coefficients whose real roots contain the x of every common zero; None if p, q share a factor."""
    try:
        res = resultant(p, q, eliminate=p.variables[1])
        if res.is_zero():
            return None
        return _x_univariate(res)
    except DegenerateInputError:
        g = trim(gcd(_x_univariate(p), _x_univariate(q)))
        return g if len(g) > 1 else [1]


def _pairs(polys: List[Poly]) -> Iterable[Tuple[Poly, Poly]]:
    yield from combinations(polys, 2)
    if len(polys) == 3:
        a, b, c = polys
        for k in (1, 2, 3):
            yield a + b * k, c
            yield a, b + c * k


def _changes_sign(p: Poly, box: Box) -> bool:
    xs, ys = np.meshgrid(np.linspace(box[0], box[1], 41), np.linspace(box[2], box[3], 41))
    values = p.compile()(xs, ys)
    return bool(values.min() < 0 < values.max())


def _elimination_system(form: PrincipalForm, box: Box) -> Tuple[List[Poly], bool]:
    """The polynomials whose common zeros are searched, and a non-isolation flag."""
    nonzero = [p for p in form.coefficients if not p.is_zero()]
    if len(nonzero) == 1:
        # Isolated real zeros of a single polynomial are critical points.
        p = nonzero[0]
        x, y = p.variables
        curve = _changes_sign(p, box)
        if curve:
            logger.warning("Only one form coefficient is nonzero and it changes sign: umbilics form a curve")
        return [q for q in (p, p.partial(x), p.partial(y)) if not q.is_zero()], curve
    return nonzero, False


def _y_roots(polys: Sequence[Poly], x0: float) -> Optional[List[float]]:
    """Real y-roots at x0 of the first coefficient that does not vanish identically there."""
    restricted = []
    for p in polys:
        by_power = p.coefficients_in(p.variables[1])
        deg = max(by_power)
        coeffs = np.zeros(deg + 1)
        for d, c in by_power.items():
            coeffs[deg - d] = float(c.compile()(np.float64(x0), np.float64(0.0)))
        scale = 1.0 + p.max_abs_coefficient() * (1.0 + abs(x0)) ** max(int(p.degree()), 0)
        restricted.append((np.linalg.norm(coeffs) / scale, coeffs))
    restricted.sort(key=lambda item: -item[0])
    for norm, coeffs in restricted:
        if norm <= 1e-12:
            continue
        nz = np.flatnonzero(np.abs(coeffs) > 1e-14 * np.abs(coeffs).max())
        coeffs = coeffs[nz[0]:]
        if len(coeffs) == 1:
            return []
        roots = np.roots(coeffs)
        return [float(r.real) for r in roots if abs(r.imag) <= 1e-6 * (1.0 + abs(r.real))]
    return None


def locate_candidates(form: PrincipalForm, box: Box, bits: int = 30) -> Tuple[List[Tuple[float, float]], bool]:
    """Raw candidate points from elimination, and whether non-isolation was detected."""
    polys, non_isolated = _elimination_system(form, box)
    if not polys:
        logger.warning("All form coefficients vanish identically")
        return [], True
    if any(p.is_constant() for p in polys):
        return [], non_isolated

    x_coeffs = None
    used: List[Poly] = []
    for p, q in _pairs(polys):
        x_coeffs = _eliminate(p, q)
        if x_coeffs is not None:
            used = [p, q] + [r for r in polys if r is not p and r is not q]
            break
    if x_coeffs is None:
        logger.warning("Every elimination vanishes: the coefficients share a common factor")
        return [], True
    if len(trim(x_coeffs)) <= 1:
        return [], non_isolated

    candidates = []
    for interval in isolate_real_roots(x_coeffs, bits=bits):
        x0 = interval.to_float()
        ys = _y_roots(used, x0)
        if ys is None:
            logger.warning(f"Every coefficient vanishes on the line x = {x0:.6g}")
            non_isolated = True
            continue
        candidates.extend((x0, y0) for y0 in ys)
    logger.debug(f"{len(candidates)} umbilic candidates from elimination")
    return candidates, non_isolated


def _cluster(points: List[np.ndarray], system: _System, eps: float, tol: float) -> List[np.ndarray]:
    radius_base = max(10 * tol, settings.CLUSTER_RADIUS)
    kept: List[np.ndarray] = []
    for p in sorted(points, key=lambda q: (q[0], q[1])):
        duplicate = False
        for k in kept:
            d = float(np.linalg.norm(p - k))
            scale = 1.0 + float(np.linalg.norm(k))
            if d <= radius_base * scale:
                duplicate = True
            elif d <= MERGE_DISTANCE * scale:
                mid = (p + k) / 2
                duplicate = max(system.form.scaled_residuals((mid[0], mid[1]))) < eps
            if duplicate:
                break
        if not duplicate:
            kept.append(p)
    return kept


def _winding_radius(p: Tuple[float, float], others: List[Tuple[float, float]]) -> float:
    nearest = min((math.hypot(p[0] - q[0], p[1] - q[1]) for q in others if q != p), default=math.inf)
    return min(settings.WINDING_RADIUS, 0.4 * nearest)


def search_finite_umbilics(form: PrincipalForm, box: Optional[Sequence[float]] = None,
                           tol: Optional[float] = None, samples: Optional[int] = None,
                           workers: Optional[int] = None, expand: bool = True) -> FiniteSearch:
    """Locate, refine, index and box-filter the finite umbilics of a principal form."""
    box = validate_box(box if box is not None else settings.DEFAULT_BOX)
    tol = settings.UMBILIC_TOL if tol is None else tol
    if tol <= 0:
        raise InvalidArgumentError("tolerance must be positive")
    eps = tol * (1.0 + form.scale())
    system = _System(form)

    raw, non_isolated = locate_candidates(form, box)
    refined = []
    for c in raw:
        q = system.refine(c)
        if np.all(np.isfinite(q)) and max(form.scaled_residuals((q[0], q[1]))) < eps:
            refined.append(q)
    points = [(float(q[0]), float(q[1])) for q in _cluster(refined, system, eps, tol)]

    if expand:
        while any(not in_box(p, box) for p in points) and _half_width(box) * 2 <= settings.MAX_BOX_HALF_WIDTH:
            box = expand_box(box)
            logger.info(f"Search box expanded to {box}")
    inside = [p for p in points if in_box(p, box)]
    outside = len(points) - len(inside)
    if outside:
        logger.warning(f"{outside} umbilics lie outside the final box {box}")

    umbilics = _index_points(form, inside, points, samples, workers)
    logger.info(f"Found {len(umbilics)} finite umbilics in {box} ({len(raw)} candidates)")
    return FiniteSearch(umbilics, box, non_isolated, outside, len(raw))


def _index_points(form: PrincipalForm, inside: List[Tuple[float, float]],
                  everything: List[Tuple[float, float]], samples: Optional[int],
                  workers: Optional[int]) -> List[UmbilicPoint]:
    workers = workers or settings.MAX_WORKERS
    results: List[UmbilicPoint] = []
    if not inside:
        return results

    def index_one(p):
        radius = _winding_radius(p, everything)
        w = winding_index(form, p, radius, samples)
        return UmbilicPoint(p[0], p[1], form.scaled_residuals(p), w.index_num_halves,
                            w.radius, w.certified, classify_point(form.f, p))

    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as executor:
        future_to_point = {executor.submit(index_one, p): p for p in inside}
        for future in concurrent.futures.as_completed(future_to_point):
            p = future_to_point[future]
            try:
                results.append(future.result())
            except Exception as e:
                logger.error(f"Error computing the index at {p}: {str(e)}")
                raise
    results.sort(key=lambda u: (u.x, u.y))
    return results


def find_finite_umbilics(form: PrincipalForm, box: Optional[Sequence[float]] = None,
                         tol: Optional[float] = None, samples: Optional[int] = None) -> List[UmbilicPoint]:
    return search_finite_umbilics(form, box, tol, samples).umbilics
