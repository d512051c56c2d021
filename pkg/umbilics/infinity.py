"""
Umbilic points at infinity.

An equator point is an umbilic at infinity exactly when it is a flat point
of the sphere form: f_n vanishes there, or both |Hess f_n| and the bracket
d_u f_(n-1) d_v f_n - d_v f_(n-1) d_u f_n vanish there. When f_n has no
repeated real linear factor only the first alternative occurs; each such
direction is then a Lemon of index 1/2 with H_f < 0, provided (for n >= 3)
f_(n-1) does not vanish on it.
"""
import concurrent.futures
import logging
import math
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from curvature.charts import chart_form, frame_for_angle, plane_to_chart
from curvature.forms import classify_form_type, hessian_curve_is_compact, hessian_det
from curvature.sphere import ExtendedForm, extended_form
from polynomials.factors import LinearFactor, real_linear_factors
from polynomials.models import Poly, Residue
from umbilic_atlas import settings
from umbilic_atlas.statuses import (DegenerateInputError, FormType, InvalidArgumentError, InvariantViolation,
                                    UmbilicType)
from umbilics.certificates import leading_coefficients, lemon_certificate, rotate_to_axis
from umbilics.models import CountBounds, HfValue, InfinityUmbilic, WindingResult
from umbilics.winding import winding_index

logger = logging.getLogger('umbilics')


def leading_forms(f: Poly) -> Tuple[int, Poly, Poly]:
    n = f.degree()
    if n < 2:
        raise DegenerateInputError("umbilics at infinity need degree >= 2")
    n = int(n)
    parts = f.homogeneous_components()
    return n, parts[n], parts[n - 1]


def bracket(fn: Poly, fn1: Poly) -> Poly:
    x, y = fn.variables
    return fn1.partial(x) * fn.partial(y) - fn1.partial(y) * fn.partial(x)


def coprime_on_factors(fn: Poly, fn1: Poly, factors: Sequence[LinearFactor]) -> bool:
    """No real linear factor of f_n divides f_(n-1) (vacuously true without factors)."""
    return not any(factor.vanishes(fn1) for factor in factors)


def hf_at_infinity(f: Poly, factor: LinearFactor) -> HfValue:
    """
    H_f at the equator point of a real linear factor of f_n.

    After rotation H_f(p) = |Hess g_n|(1, 0) / lam^n = -((n-1) a)^2 / lam^n,
    negative exactly when the factor is simple.
    """
    n, _, _ = leading_forms(f)
    g, lam = rotate_to_axis(f, factor)
    a, _ = leading_coefficients(g, n)
    gn = g.homogeneous_components()[n]
    at_axis = hessian_det(gn).evaluate((Fraction(1), Fraction(0)))
    closed = -((n - 1) * a) ** 2
    matches = at_axis == closed
    if not matches:
        logger.error(f"|Hess g_n|(1, 0) differs from -((n-1) a)^2 at theta={factor.theta:.6f}")

    simple = not factor.value_vanishes(a)
    value = factor.to_float(closed) / factor.to_float(lam) ** n
    exact = None
    if not isinstance(closed, Residue) and not isinstance(lam, Residue):
        exact = Fraction(closed) / Fraction(lam) ** n
    sign = -1 if simple else 0
    return HfValue(value, sign, simple, exact, matches)


def _singular_points_in_chart(frame, theta: float, directions: Sequence[float],
                              finite_points: Sequence[Tuple[float, float]]) -> List[Tuple[float, float]]:
    """Other singular points of the line field, in the chart centred on theta."""
    out = []
    for other in directions:
        for shift in (0.0, math.pi):
            delta = (other + shift - theta + math.pi) % (2 * math.pi) - math.pi
            if abs(delta) < 1e-12 or abs(delta) >= math.pi / 2:
                continue
            out.append((math.tan(delta), 0.0))
    for p in finite_points:
        for sheet in (1.0, -1.0):
            q = (sheet * p[0], sheet * p[1])
            try:
                v, w = plane_to_chart(frame, q)
            except InvalidArgumentError:
                continue
            out.append((v, sheet * w))
    return out


def infinity_index(ext: ExtendedForm, theta: float, radius: Optional[float] = None,
                   samples: Optional[int] = None, avoid: Sequence[Tuple[float, float]] = ()) -> WindingResult:
    """Winding index of the sphere form around the equator point at angle theta."""
    frame = frame_for_angle(theta)
    chart = chart_form(ext, f"rot:{math.degrees(theta):.6f}", frame=frame)
    radius = settings.WINDING_RADIUS if radius is None else radius
    nearest = min((math.hypot(*p) for p in avoid), default=math.inf)
    radius = min(radius, 0.4 * nearest)
    result = winding_index(chart, (0.0, 0.0), radius, samples)
    for shrink in (8, 64):
        if result.certified:
            break
        logger.info(f"Winding at theta={theta:.6f} not certified at r={result.radius:g}, shrinking")
        result = winding_index(chart, (0.0, 0.0), radius / shrink, samples)
    return result


def _general_criterion(fn: Poly, fn1: Poly, factors: Sequence[LinearFactor]) -> Tuple[List[LinearFactor], bool]:
    """
    Directions off f_n = 0 where |Hess f_n| and the bracket both vanish, and
    whether the whole equator is flat.
    """
    Hn = hessian_det(fn)
    br = bracket(fn, fn1)
    if Hn.is_zero() and br.is_zero():
        logger.warning("|Hess f_n| and the bracket vanish identically: every equator point is flat")
        return [], True
    base = br if Hn.is_zero() else Hn
    other = Hn if Hn.is_zero() else br
    if base.degree() < 1:
        return [], False
    known = [f.theta for f in factors]
    extra = []
    for candidate in real_linear_factors(base).factors:
        if any(abs(candidate.theta - t) < 1e-12 for t in known):
            continue
        if other.is_zero() or candidate.vanishes(other):
            extra.append(candidate)
    return extra, False


def infinity_umbilics(f: Poly, samples: Optional[int] = None, workers: Optional[int] = None,
                      finite_points: Sequence[Tuple[float, float]] = (),
                      ext: Optional[ExtendedForm] = None) -> List[InfinityUmbilic]:
    """
    Umbilic directions at infinity, sorted by theta, each with the windings at
    both antipodal points.
    """
    n, fn, fn1 = leading_forms(f)
    ext = ext or extended_form(f)
    factorization = real_linear_factors(fn)
    factors = factorization.factors
    square_free = factorization.all_simple
    coprime = n == 2 or coprime_on_factors(fn, fn1, factors)

    entries: List[Tuple[LinearFactor, str]] = [(factor, 'leading_form') for factor in factors]
    if not square_free:
        extra, whole_equator = _general_criterion(fn, fn1, factors)
        entries.extend((factor, 'hessian_bracket') for factor in extra)
        if whole_equator:
            logger.warning("Umbilics at infinity are not isolated")
    directions = [factor.theta for factor, _ in entries]

    def analyse(factor: LinearFactor, source: str) -> InfinityUmbilic:
        point = (factor.alpha, factor.beta, Fraction(0))
        flat = all(factor.value_vanishes(value) for value in ext.entries(point).values())
        if not flat:
            raise InvariantViolation(f"umbilic direction theta={factor.theta:.6f} is not a flat point")
        windings = []
        for theta in (factor.theta, factor.theta + math.pi):
            frame = frame_for_angle(theta)
            avoid = _singular_points_in_chart(frame, theta, directions, finite_points)
            windings.append(infinity_index(ext, theta, samples=samples, avoid=avoid))
        if source != 'leading_form':
            return InfinityUmbilic(factor.theta, factor.multiplicity, factor, None, tuple(windings),
                                   UmbilicType.UNCERTIFIED, None, flat, source)
        hf = hf_at_infinity(f, factor)
        certificate = lemon_certificate(f, factor, n, coprime=coprime)
        lemon = (square_free and certificate.certified and hf.certified and hf.sign < 0
                 and all(w.certified and w.index_num_halves == 1 for w in windings))
        if square_free and certificate.hypotheses_hold and not lemon:
            logger.warning(f"Direction theta={factor.theta:.6f} meets the hypotheses but is not certified")
        kind = UmbilicType.LEMON if lemon else UmbilicType.UNCERTIFIED
        return InfinityUmbilic(factor.theta, factor.multiplicity, factor, hf, tuple(windings),
                               kind, certificate, flat, source)

    workers = workers or settings.MAX_WORKERS
    results: List[InfinityUmbilic] = []
    if entries:
        with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as executor:
            future_to_factor = {executor.submit(analyse, factor, source): factor for factor, source in entries}
            for future in concurrent.futures.as_completed(future_to_factor):
                factor = future_to_factor[future]
                try:
                    results.append(future.result())
                except Exception as e:
                    logger.error(f"Error analysing the direction theta={factor.theta:.6f}: {str(e)}")
                    raise
    results.sort(key=lambda u: u.theta)
    logger.info(f"{len(results)} umbilic directions at infinity ({2 * len(results)} equator points)")
    return results


def count_bounds(f: Poly, umbilics: Optional[Sequence[InfinityUmbilic]] = None) -> CountBounds:
    """
    Number of equator umbilics against the bound 2n (compact Hessian curve)
    or 2n - 4 (unbounded).
    """
    n, fn, _ = leading_forms(f)
    factorization = real_linear_factors(fn)
    compact = hessian_curve_is_compact(f)
    bound = 2 * n if compact else 2 * n - 4
    count = 2 * (len(umbilics) if umbilics is not None else factorization.R)
    result = CountBounds(compact, bound, count, factorization.all_simple)
    if result.applicable and not result.within:
        raise InvariantViolation(f"{count} umbilics at infinity exceed the bound {bound}")
    return result


def sphere_index_sum(finite_sum_halves: int, umbilics: Sequence[InfinityUmbilic]) -> Dict[str, int]:
    """2 * (finite indices) + (equator indices), in halves; 4 halves is the Euler characteristic."""
    equator = sum(sum(u.index_num_halves) for u in umbilics)
    return {
        'finite_sum_halves': finite_sum_halves,
        'equator_sum_halves': equator,
        'sphere_total_halves': 2 * finite_sum_halves + equator,
    }


def parity_metadata(n: int) -> Dict[str, object]:
    return {
        'n_parity': 'odd' if n % 2 else 'even',
        'fields_swap_between_hemispheres': bool(n % 2),
        'antipodal_identification': not n % 2,
    }


def leading_form_type(f: Poly) -> FormType:
    _, fn, _ = leading_forms(f)
    return classify_form_type(fn).kind
