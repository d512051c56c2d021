from rendering.reports import AnalysisReport, analyze
from rendering.streamlines import Streamline, integrate_streamline, integrate_streamlines
from rendering.svg import RenderOptions, UmbilicMarker, render_svg

__all__ = [
    'AnalysisReport', 'RenderOptions', 'Streamline', 'UmbilicMarker', 'analyze',
    'integrate_streamline', 'integrate_streamlines', 'render_svg',
]
