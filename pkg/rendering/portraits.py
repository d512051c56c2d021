"""
Plane and chart portraits: seeds, streamlines and umbilic markers, rendered to SVG.
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from curvature.charts import ChartForm, chart_form, sphere_to_chart
from curvature.forms import principal_form
from curvature.sphere import extended_form, project
from polynomials.models import Poly
from rendering.streamlines import (Region, Streamline, equator_seeds, integrate_streamlines, seed_grid,
                                   seed_rings)
from rendering.svg import RenderOptions, UmbilicMarker, finite_markers, index_label, render_svg
from umbilic_atlas import settings
from umbilic_atlas.statuses import InvalidArgumentError
from umbilics.finite import search_finite_umbilics, validate_box
from umbilics.infinity import infinity_umbilics
from umbilics.models import InfinityUmbilic, UmbilicPoint

logger = logging.getLogger('rendering')

CHART_HALF_WIDTH = 1.0


@dataclass(frozen=True)
class Portrait:
    svg: str
    streamlines: List[Streamline]
    markers: List[UmbilicMarker]
    region: Region


def plane_portrait(f: Poly, box: Optional[Sequence[float]] = None, seeds: Optional[int] = None,
                   tol: Optional[float] = None, workers: Optional[int] = None, title: Optional[str] = None) -> Portrait:
    """Curvature lines of both families in the box, with the finite umbilics marked."""
    region = validate_box(box if box is not None else settings.DEFAULT_BOX)
    seeds = settings.SEEDS if seeds is None else seeds
    form = principal_form(f)
    search = search_finite_umbilics(form, region, tol, workers=workers, expand=False)
    points = [u.point for u in search.umbilics]

    all_seeds = seed_grid(region, seeds) + seed_rings(points, region)
    lines = integrate_streamlines(form, all_seeds, region, points, workers=workers)
    markers = finite_markers(search.umbilics)
    svg = render_svg(lines, markers, RenderOptions(region=region, title=title or f"{f.to_text()}: plane"))
    return Portrait(svg, lines, markers, region)


def chart_markers(chart: ChartForm, finite: Sequence[UmbilicPoint],
                  infinity: Sequence[InfinityUmbilic]) -> List[UmbilicMarker]:
    """Umbilics visible in the chart: finite ones on both sheets, equator ones as diamonds."""
    markers = []
    for u in finite:
        for sheet in (1, 2):
            q = sphere_to_chart(chart.frame, project(u.point, sheet).as_tuple())
            if q is not None:
                markers.append(UmbilicMarker(q[0], q[1], index_label(u.index_num_halves)))
    for umbilic in infinity:
        for point, halves in zip(umbilic.points, umbilic.index_num_halves):
            q = sphere_to_chart(chart.frame, point)
            if q is not None:
                markers.append(UmbilicMarker(q[0], 0.0, index_label(halves), at_infinity=True))
    return markers


def chart_portrait(f: Poly, chart: str = 'u+', seeds: Optional[int] = None, half_width: float = CHART_HALF_WIDTH,
                   box: Optional[Sequence[float]] = None, tol: Optional[float] = None,
                   samples: Optional[int] = None, workers: Optional[int] = None,
                   title: Optional[str] = None) -> Portrait:
    """
    Curvature lines of the sphere form near the equator in one chart.

    Seeds cover the chart square, the equator itself and rings around every
    visible umbilic. Lines are traced per chart; nothing is stitched across
    chart seams.
    """
    if half_width <= 0:
        raise InvalidArgumentError("chart half width must be positive")
    seeds = settings.SEEDS if seeds is None else seeds
    region = (-half_width, half_width, -half_width, half_width)
    ext = extended_form(f)
    form = chart_form(ext, chart)

    search = search_finite_umbilics(principal_form(f), box, tol, samples, workers)
    infinity = infinity_umbilics(f, samples, workers, [u.point for u in search.umbilics], ext=ext)
    markers = [m for m in chart_markers(form, search.umbilics, infinity)
               if region[0] <= m.x <= region[1] and region[2] <= m.y <= region[3]]
    points: List[Tuple[float, float]] = [(m.x, m.y) for m in markers]

    all_seeds = (seed_grid(region, seeds) + equator_seeds(region, 8, points)
                 + seed_rings(points, region))
    lines = integrate_streamlines(form, all_seeds, region, points, workers=workers)
    options = RenderOptions(region=region, title=title or f"{f.to_text()}: chart {form.chart}",
                            equator_line=True, labels=('v', 'w'))
    svg = render_svg(lines, markers, options)
    logger.info(f"Chart {form.chart}: {len(markers)} umbilics visible")
    return Portrait(svg, lines, markers, region)
