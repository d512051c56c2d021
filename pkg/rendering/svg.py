"""
SVG portraits of curvature lines.

Rendering goes through matplotlib's Agg/SVG backend with a fixed hash salt
and no date metadata, so the same input always yields the same document.
"""
import io
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import matplotlib

matplotlib.use('Agg')
import matplotlib.pyplot as plt  # noqa: E402

from rendering.streamlines import Region, Streamline  # noqa: E402

logger = logging.getLogger('rendering')

BRANCH_COLOURS = {1: '#1f77b4', 2: '#d62728'}


@dataclass(frozen=True)
class UmbilicMarker:
    x: float
    y: float
    label: str
    at_infinity: bool = False


@dataclass
class RenderOptions:
    region: Region
    title: Optional[str] = None
    width_in: float = 6.0
    height_in: float = 6.0
    line_width: float = 0.6
    # chart portraits draw w = 0 as the equator line
    equator_line: bool = False
    labels: Tuple[str, str] = ('x', 'y')


def _draw_markers(ax, markers: Sequence[UmbilicMarker]) -> None:
    for m in markers:
        if m.at_infinity:
            ax.plot([m.x], [m.y], marker='D', markersize=7, color='#2ca02c', markeredgecolor='black',
                    linestyle='none', zorder=4)
        else:
            ax.plot([m.x], [m.y], marker='o', markersize=6, color='black', linestyle='none', zorder=4)
        if m.label:
            ax.annotate(m.label, (m.x, m.y), textcoords='offset points', xytext=(5, 5), fontsize=8, zorder=5)


def render_svg(streamlines: Sequence[Streamline], markers: Sequence[UmbilicMarker],
               options: RenderOptions) -> str:
    """SVG document with one polyline per streamline and a marker per umbilic."""
    region = options.region
    with matplotlib.rc_context({'svg.hashsalt': 'umbilic-atlas', 'svg.fonttype': 'none'}):
        fig, ax = plt.subplots(figsize=(options.width_in, options.height_in))
        try:
            for line in streamlines:
                pts = line.array
                if len(pts) < 2:
                    continue
                ax.plot(pts[:, 0], pts[:, 1], color=BRANCH_COLOURS[line.branch],
                        linewidth=options.line_width, solid_capstyle='round')
            if options.equator_line:
                ax.axhline(0.0, color='black', linewidth=1.2, zorder=3)
            _draw_markers(ax, markers)

            ax.set_xlim(region[0], region[1])
            ax.set_ylim(region[2], region[3])
            ax.set_aspect('equal', adjustable='box')
            ax.set_xlabel(options.labels[0])
            ax.set_ylabel(options.labels[1])
            if options.title:
                ax.set_title(options.title, fontsize=10)

            buffer = io.StringIO()
            fig.savefig(buffer, format='svg', metadata={'Date': None}, bbox_inches='tight')
        finally:
            plt.close(fig)
    logger.info(f"Rendered {len(streamlines)} streamlines and {len(markers)} umbilic markers")
    return buffer.getvalue()


def finite_markers(umbilics) -> List[UmbilicMarker]:
    return [UmbilicMarker(u.x, u.y, index_label(u.index_num_halves)) for u in umbilics]


def index_label(halves: int) -> str:
    return str(halves // 2) if halves % 2 == 0 else f"{halves}/2"
