"""
Curvature lines as streamlines of a direction field defined modulo pi.

The right-hand side is the unit direction of one root of the quadratic form,
with its sign aligned to the current heading, so the field is smooth along
the line even though the line field itself has no orientation. Steps use the
Runge-Kutta-Fehlberg 4(5) pair with absolute error control.
"""
import concurrent.futures
import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from curvature.charts import ChartForm
from curvature.forms import PrincipalForm
from umbilic_atlas import settings
from umbilic_atlas.statuses import InvalidArgumentError, Termination, UmbilicError
from umbilics.directions import root_angles
from umbilics.winding import as_evaluator

logger = logging.getLogger('rendering')

Point = Tuple[float, float]
Region = Tuple[float, float, float, float]

# Fehlberg tableau
_C = (0.0, 1 / 4, 3 / 8, 12 / 13, 1.0, 1 / 2)
_A = (
    (),
    (1 / 4,),
    (3 / 32, 9 / 32),
    (1932 / 2197, -7200 / 2197, 7296 / 2197),
    (439 / 216, -8.0, 3680 / 513, -845 / 4104),
    (-8 / 27, 2.0, -3554 / 2565, 1859 / 4104, -11 / 40),
)
_B4 = (25 / 216, 0.0, 1408 / 2565, 2197 / 4104, -1 / 5, 0.0)
_ERR = (1 / 360, 0.0, -128 / 4275, -2197 / 75240, 1 / 50, 2 / 55)

SAFETY = 0.9
MIN_STEP_FRACTION = 1e-12
MAX_STEPS = 200000


@dataclass(frozen=True)
class Streamline:
    """
    One curvature line through a seed, traced both ways.

    `termination` is why the forward half stopped, `backward_termination`
    why the backward half did.
    """
    seed_id: int
    branch: int
    chart: str
    seed: Point
    points: List[Point] = field(repr=False)
    termination: Termination
    backward_termination: Termination
    length: float

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.points, dtype=float)


@dataclass(frozen=True)
class StepControl:
    atol: float
    max_step: float
    min_step: float
    max_length: float
    r_stop: float


def region_diameter(region: Region) -> float:
    return math.hypot(region[1] - region[0], region[3] - region[2])


def step_control(region: Region, atol: Optional[float] = None, max_length: Optional[float] = None,
                 r_stop: Optional[float] = None) -> StepControl:
    diameter = region_diameter(region)
    return StepControl(
        atol=settings.STREAMLINE_ATOL if atol is None else atol,
        max_step=settings.STREAMLINE_MAX_STEP_FRACTION * diameter,
        min_step=MIN_STEP_FRACTION * diameter,
        max_length=settings.STREAMLINE_MAX_LENGTH if max_length is None else max_length,
        r_stop=settings.R_STOP if r_stop is None else r_stop,
    )


def chart_label(source) -> str:
    return source.chart if isinstance(source, ChartForm) else 'plane'


class _Heading:
    """Direction of one branch at a point, continued from a previous heading."""

    def __init__(self, source):
        self.evaluate = as_evaluator(source)

    def initial(self, p: Point, branch: int) -> Optional[Tuple[float, float]]:
        a, b, c = self.evaluate(np.float64(p[0]), np.float64(p[1]))
        if a == 0 and b == 0 and c == 0:
            return None
        t1, t2, _ = root_angles(a, b, c)
        theta = float(t1) if branch == 1 else float(t2)
        return (math.cos(theta), math.sin(theta))

    def __call__(self, p: Point, prev: Tuple[float, float]) -> Optional[Tuple[float, float]]:
        a, b, c = self.evaluate(np.float64(p[0]), np.float64(p[1]))
        if not (np.isfinite(a) and np.isfinite(b) and np.isfinite(c)):
            return None
        if a == 0 and b == 0 and c == 0:
            return None
        t1, t2, _ = root_angles(a, b, c)
        best = None
        for theta in (float(t1), float(t2)):
            d = (math.cos(theta), math.sin(theta))
            dot = d[0] * prev[0] + d[1] * prev[1]
            if best is None or abs(dot) > best[0]:
                best = (abs(dot), d if dot >= 0 else (-d[0], -d[1]))
        return best[1]


def _in_region(p: Point, region: Region) -> bool:
    return region[0] <= p[0] <= region[1] and region[2] <= p[1] <= region[3]


def _near_umbilic(p: Point, umbilics: Sequence[Point], r_stop: float) -> bool:
    return any(math.hypot(p[0] - q[0], p[1] - q[1]) < r_stop for q in umbilics)


def _rkf45_step(heading: _Heading, p: Point, d: Tuple[float, float], h: float):
    """One Fehlberg step of length h; (new point, error estimate) or None when the field breaks down."""
    k = []
    for i in range(6):
        x, y = p
        for j, a in enumerate(_A[i]):
            x += h * a * k[j][0]
            y += h * a * k[j][1]
        ki = d if i == 0 else heading((x, y), d)
        if ki is None:
            return None
        k.append(ki)
    x = p[0] + h * sum(b * ki[0] for b, ki in zip(_B4, k))
    y = p[1] + h * sum(b * ki[1] for b, ki in zip(_B4, k))
    ex = h * sum(e * ki[0] for e, ki in zip(_ERR, k))
    ey = h * sum(e * ki[1] for e, ki in zip(_ERR, k))
    return (x, y), math.hypot(ex, ey)


def _trace(heading: _Heading, seed: Point, d0: Tuple[float, float], region: Region,
           umbilics: Sequence[Point], control: StepControl) -> Tuple[List[Point], Termination, float]:
    points = [seed]
    p, d = seed, d0
    h = control.max_step
    length = 0.0
    for _ in range(MAX_STEPS):
        if length >= control.max_length:
            return points, Termination.MAX_LENGTH, length
        h = min(h, control.max_length - length)
        step = _rkf45_step(heading, p, d, h)
        if step is None:
            if _near_umbilic(p, umbilics, 10 * control.r_stop):
                return points, Termination.UMBILIC_PROXIMITY, length
            h /= 2
            if h < control.min_step:
                return points, Termination.STEP_FAILURE, length
            continue
        q, err = step
        if err > control.atol:
            h = max(h * max(0.2, SAFETY * (control.atol / err) ** 0.25), h / 10)
            if h < control.min_step:
                logger.debug(f"Step collapse at ({p[0]:.6g}, {p[1]:.6g})")
                return points, Termination.STEP_FAILURE, length
            continue

        d_new = heading(q, d)
        if d_new is None:
            points.append(q)
            return points, Termination.UMBILIC_PROXIMITY, length + h
        points.append(q)
        length += h
        p, d = q, d_new
        if not _in_region(p, region):
            return points, Termination.BOUNDARY, length
        if _near_umbilic(p, umbilics, control.r_stop):
            return points, Termination.UMBILIC_PROXIMITY, length
        grow = 5.0 if err == 0 else min(5.0, SAFETY * (control.atol / err) ** 0.2)
        h = min(control.max_step, h * max(1.0, grow))
    return points, Termination.MAX_LENGTH, length


def integrate_streamline(source, seed: Point, branch: int = 1, region: Optional[Region] = None,
                         umbilics: Sequence[Point] = (), control: Optional[StepControl] = None,
                         seed_id: int = 0, both_ways: bool = True) -> Streamline:
    """
    Trace the curvature line of `branch` through `seed` inside `region`.

    Raises UmbilicError when the seed is an umbilic (or within r_stop of a
    known one) and InvalidArgumentError for a seed outside the region.
    """
    if branch not in (1, 2):
        raise InvalidArgumentError("branch must be 1 or 2")
    region = tuple(region) if region is not None else settings.DEFAULT_BOX
    control = control or step_control(region)
    seed = (float(seed[0]), float(seed[1]))
    if not _in_region(seed, region):
        raise InvalidArgumentError(f"seed {seed} lies outside the region {region}")
    if _near_umbilic(seed, umbilics, control.r_stop):
        raise UmbilicError(f"seed {seed} is within {control.r_stop:g} of an umbilic", details={'seed': list(seed)})

    heading = _Heading(source)
    d0 = heading.initial(seed, branch)
    if d0 is None or (isinstance(source, PrincipalForm)
                      and max(source.scaled_residuals(seed)) < settings.UMBILIC_TOL * (1.0 + source.scale())):
        raise UmbilicError(f"seed {seed} is an umbilic", details={'seed': list(seed)})

    forward, reason, length = _trace(heading, seed, d0, region, umbilics, control)
    back_reason = reason
    points = forward
    if both_ways:
        backward, back_reason, back_length = _trace(heading, seed, (-d0[0], -d0[1]), region, umbilics, control)
        points = list(reversed(backward[1:])) + forward
        length += back_length
    return Streamline(seed_id, branch, chart_label(source), seed, points, reason, back_reason, length)


def seed_grid(region: Region, count: int) -> List[Point]:
    """About `count` seeds on a uniform grid strictly inside the region."""
    if count <= 0:
        return []
    side = max(1, int(math.ceil(math.sqrt(count))))
    xs = region[0] + (np.arange(side) + 0.5) * (region[1] - region[0]) / side
    ys = region[2] + (np.arange(side) + 0.5) * (region[3] - region[2]) / side
    return [(float(x), float(y)) for y in ys for x in xs][:count]


def seed_rings(umbilics: Sequence[Point], region: Region, r_stop: Optional[float] = None,
               per_ring: int = 16) -> List[Point]:
    """Rings of seeds at 5 r_stop around each umbilic."""
    r = 5 * (settings.R_STOP if r_stop is None else r_stop)
    seeds = []
    for q in umbilics:
        for k in range(per_ring):
            phi = 2 * math.pi * k / per_ring
            p = (q[0] + r * math.cos(phi), q[1] + r * math.sin(phi))
            if _in_region(p, region):
                seeds.append(p)
    return seeds


def equator_seeds(region: Region, count: int, avoid: Sequence[Point] = (), r_stop: Optional[float] = None) -> List[Point]:
    """Seeds on w = 0 of a chart, kept away from the umbilics on it."""
    r = 10 * (settings.R_STOP if r_stop is None else r_stop)
    vs = np.linspace(region[0], region[1], count + 2)[1:-1]
    return [(float(v), 0.0) for v in vs if not _near_umbilic((float(v), 0.0), avoid, r)]


def integrate_streamlines(source, seeds: Sequence[Point], region: Region, umbilics: Sequence[Point] = (),
                          branches: Sequence[int] = (1, 2), control: Optional[StepControl] = None,
                          workers: Optional[int] = None) -> List[Streamline]:
    """Trace every (seed, branch) pair concurrently; results are ordered by seed id and branch."""
    control = control or step_control(region)
    workers = workers or settings.MAX_WORKERS
    jobs = [(i, seed, branch) for i, seed in enumerate(seeds) for branch in branches]
    results: List[Streamline] = []
    if not jobs:
        return results

    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as executor:
        future_to_job = {
            executor.submit(integrate_streamline, source, seed, branch, region, umbilics, control, i): (i, seed, branch)
            for i, seed, branch in jobs
        }
        for future in concurrent.futures.as_completed(future_to_job):
            i, seed, branch = future_to_job[future]
            try:
                results.append(future.result())
            except UmbilicError as e:
                logger.info(f"Skipping seed {i} at ({seed[0]:.4g}, {seed[1]:.4g}): {e.message}")
            except Exception as e:
                logger.error(f"Error tracing seed {i} branch {branch}: {str(e)}")
                results.append(Streamline(i, branch, chart_label(source), seed, [seed],
                                          Termination.STEP_FAILURE, Termination.STEP_FAILURE, 0.0))

    results.sort(key=lambda s: (s.seed_id, s.branch))
    logger.info(f"Traced {len(results)} streamlines from {len(seeds)} seeds in the {chart_label(source)} chart")
    return results
