"""
Chart restrictions of the sphere form.

A chart is a frame (d, e) of the uv-plane: d is the chart centre direction
and e the direction of the chart's v axis. Chart coordinates (v, w) stand for
the sphere point d + v e + w (0, 0, 1), up to scale. Along the chart the
field equation reads

    w P dv^2 - Q dv dw + S dw^2 = 0

with P = e_u^2 A + e_u e_v B + e_v^2 C, Q = e_u (2uA + vB) + e_v (uB + 2vC)
and S = T, evaluated at u = d_u + v e_u, v = d_v + v e_v. For the chart u = 1
this is P = C(1, v, w), Q = B + 2vC, S = T(1, v, w).
"""
import logging
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence, Tuple

import numpy as np

from curvature.sphere import ExtendedForm
from polynomials.models import CHART_VARIABLES, ChartPoly, Poly
from umbilic_atlas.statuses import InvalidArgumentError

logger = logging.getLogger('curvature')

AXIS_FRAMES = {
    'u+': ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))),
    'u-': ((Fraction(-1), Fraction(0)), (Fraction(0), Fraction(1))),
    'v+': ((Fraction(0), Fraction(1)), (Fraction(1), Fraction(0))),
    'v-': ((Fraction(0), Fraction(-1)), (Fraction(1), Fraction(0))),
}

_ROT_RE = re.compile(r'^rot:(?P<deg>[-+]?\d+(?:\.\d*)?)$')

Frame = Tuple[Tuple[object, object], Tuple[object, object]]


@dataclass(frozen=True)
class ChartForm:
    chart: str
    P: Poly
    Q: Poly
    S: Poly
    frame: Frame = field(repr=False)
    exact: bool = True

    @cached_property
    def _compiled(self):
        return self.P.compile(), self.Q.compile(), self.S.compile()

    def evaluator(self):
        """(vs, ws) -> (a, b, c) for a dv^2 + b dv dw + c dw^2."""
        cp, cq, cs = self._compiled

        def evaluate(vs, ws):
            ws_arr = np.asarray(ws, dtype=float)
            return ws_arr * cp(vs, ws), -cq(vs, ws), cs(vs, ws)
        return evaluate

    def at(self, p: Tuple[float, float]) -> Tuple[float, float, float]:
        a, b, c = self.evaluator()(np.float64(p[0]), np.float64(p[1]))
        return float(a), float(b), float(c)

    def centre_direction(self) -> Tuple[float, float]:
        d = self.frame[0]
        return (float(d[0]), float(d[1]))


def rotation_frame(theta_deg: float) -> Tuple[Frame, bool]:
    """Frame for rot:theta; exact when theta is a multiple of 90 degrees."""
    if float(theta_deg).is_integer() and int(theta_deg) % 90 == 0:
        k = (int(theta_deg) // 90) % 4
        c, s = [(1, 0), (0, 1), (-1, 0), (0, -1)][k]
        return ((Fraction(c), Fraction(s)), (Fraction(-s), Fraction(c))), True
    t = math.radians(theta_deg)
    c, s = math.cos(t), math.sin(t)
    return ((c, s), (-s, c)), False


def frame_for_angle(theta: float) -> Frame:
    """Float frame centred on the direction theta (radians)."""
    c, s = math.cos(theta), math.sin(theta)
    return ((c, s), (-s, c))


def resolve_chart(chart: str, rotation: Optional[float] = None) -> Tuple[str, Frame, bool]:
    if chart in AXIS_FRAMES:
        return chart, AXIS_FRAMES[chart], True
    if chart == 'rot' and rotation is not None:
        frame, exact = rotation_frame(rotation)
        return f"rot:{rotation:g}", frame, exact
    m = _ROT_RE.match(chart or '')
    if not m:
        raise InvalidArgumentError(f"unknown chart {chart!r}; use u+, u-, v+, v- or rot:<deg>")
    deg = float(m.group('deg'))
    frame, exact = rotation_frame(deg)
    return chart, frame, exact


def chart_form(ext: ExtendedForm, chart: str = 'u+', rotation: Optional[float] = None,
               frame: Optional[Frame] = None) -> ChartForm:
    """
    Restrict the sphere form to a chart.

    `chart` is one of u+, u-, v+, v- or rot:<degrees>; an explicit `frame`
    (exact or float) overrides it. Substitution is exact whenever the frame
    entries are exact.
    """
    if frame is not None:
        exact = not any(isinstance(c, float) for vec in frame for c in vec)
        chart_id = chart
    else:
        chart_id, frame, exact = resolve_chart(chart, rotation)
    (du, dv), (eu, ev) = frame
    V, W = ChartPoly.gens()
    u_sub = V * eu + du
    v_sub = V * ev + dv
    subs = [u_sub, v_sub, W]
    A = ext.A.compose(subs, CHART_VARIABLES)
    B = ext.B.compose(subs, CHART_VARIABLES)
    C = ext.C.compose(subs, CHART_VARIABLES)
    S = ext.T.compose(subs, CHART_VARIABLES)
    P = A * (eu * eu) + B * (eu * ev) + C * (ev * ev)
    Q = (u_sub * A * 2 + v_sub * B) * eu + (u_sub * B + v_sub * C * 2) * ev
    logger.debug(f"Chart {chart_id}: |P|={len(P)}, |Q|={len(Q)}, |S|={len(S)}, exact={exact}")
    return ChartForm(chart_id, P, Q, S, frame, exact)


def sphere_to_chart(frame: Frame, point: Sequence[float]) -> Optional[Tuple[float, float]]:
    """Chart coordinates of a sphere point, None when it is not in the chart."""
    (du, dv), (eu, ev) = [(float(a), float(b)) for a, b in frame]
    u, v, w = (float(c) for c in point)
    s = u * du + v * dv
    if s <= 0:
        return None
    return ((u * eu + v * ev) / s, w / s)


def plane_to_chart(frame: Frame, p: Tuple[float, float],
                   dp: Optional[Tuple[float, float]] = None):
    """
    Chart coordinates of a plane point, and optionally the image of a
    tangent vector dp under the chart map.
    """
    (du, dv), (eu, ev) = [(float(a), float(b)) for a, b in frame]
    x, y = float(p[0]), float(p[1])
    s = x * du + y * dv
    if s <= 0:
        raise InvalidArgumentError("point is not visible in this chart")
    coords = ((x * eu + y * ev) / s, 1.0 / s)
    if dp is None:
        return coords
    dx, dy = float(dp[0]), float(dp[1])
    ds = dx * du + dy * dv
    de = dx * eu + dy * ev
    e_val = x * eu + y * ev
    return coords, ((de * s - e_val * ds) / (s * s), -ds / (s * s))


def chart_to_plane(frame: Frame, q: Tuple[float, float]) -> Tuple[float, float]:
    (du, dv), (eu, ev) = [(float(a), float(b)) for a, b in frame]
    v, w = float(q[0]), float(q[1])
    if w == 0:
        raise InvalidArgumentError("equator points have no finite preimage")
    return ((du + v * eu) / w, (dv + v * ev) / w)
