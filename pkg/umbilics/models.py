"""
Result types for finite umbilics, umbilics at infinity and the index ledger.

Indices are half-integers and are stored as integer numbers of halves.
"""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from polynomials.factors import LinearFactor
from umbilic_atlas.statuses import PointClass, UmbilicType, Verdict


@dataclass(frozen=True)
class WindingResult:
    index_num_halves: int
    certified: bool
    radius: float
    samples: int
    max_step: float
    negative_discriminant: bool = False

    @property
    def index(self) -> Fraction:
        return Fraction(self.index_num_halves, 2)


@dataclass(frozen=True)
class UmbilicPoint:
    x: float
    y: float
    residuals: Tuple[float, float, float]
    index_num_halves: int
    winding_radius: float
    certified: bool
    point_class: Optional[PointClass] = None

    @property
    def index(self) -> Fraction:
        return Fraction(self.index_num_halves, 2)

    @property
    def point(self) -> Tuple[float, float]:
        return (self.x, self.y)

    def distance_to(self, p: Tuple[float, float]) -> float:
        return math.hypot(self.x - p[0], self.y - p[1])


@dataclass(frozen=True)
class FiniteSearch:
    """Outcome of the finite umbilic search: the points plus search metadata."""
    umbilics: List[UmbilicPoint]
    box: Tuple[float, float, float, float]
    non_isolated: bool = False
    outside_box: int = 0
    candidates: int = 0


@dataclass(frozen=True)
class HfValue:
    """
    H_f at an equator point.

    `exact` is a Fraction when the direction is rational and None otherwise;
    `sign` is certified exactly whenever `certified` is set.
    """
    value: float
    sign: int
    certified: bool
    exact: Optional[Fraction] = None
    closed_form_matches: bool = True


@dataclass(frozen=True)
class LemonCertificate:
    """
    First-order jet of the chart form at an umbilic at infinity, after the
    direction has been rotated onto (1, 0, 0).

    Exact values are Fractions, or Residues along irrational directions.
    """
    n: int
    a: object
    b: object
    lam: object
    constC: object
    linB: Tuple[object, object]
    linQ: Tuple[object, object]
    linT: Tuple[object, object]
    hessian_det: object
    model_hessian_det: object
    normalized_model_det: Optional[object]
    matches: Dict[str, bool]
    positive_definite: bool
    hypotheses_hold: bool

    @property
    def certified(self) -> bool:
        return self.hypotheses_hold and self.positive_definite and all(self.matches.values())


@dataclass(frozen=True)
class InfinityUmbilic:
    """
    One real direction of the equator carrying umbilics at infinity: the
    antipodal pair (cos theta, sin theta, 0) and its opposite.
    """
    theta: float
    multiplicity: int
    factor: Optional[LinearFactor] = field(repr=False)
    hf: Optional[HfValue]
    windings: Tuple[WindingResult, ...]
    type: UmbilicType
    certificate: Optional[LemonCertificate] = None
    flat: bool = True
    source: str = 'leading_form'

    @property
    def points(self) -> List[Tuple[float, float, float]]:
        c, s = math.cos(self.theta), math.sin(self.theta)
        return [(c, s, 0.0), (-c, -s, 0.0)]

    @property
    def index_num_halves(self) -> Tuple[int, ...]:
        return tuple(w.index_num_halves for w in self.windings)


@dataclass(frozen=True)
class CountBounds:
    compact: bool
    bound: int
    count: int
    applicable: bool

    @property
    def within(self) -> bool:
        return self.count <= self.bound


@dataclass(frozen=True)
class PHLedger:
    n: int
    R: int
    finite: List[UmbilicPoint]
    sum_halves: int
    rhs_halves: int
    hypotheses: Dict[str, bool]
    verdict: Verdict
    box: Tuple[float, float, float, float]
    certified: bool
    equator_sum_halves: Optional[int] = None
    sphere_total_halves: Optional[int] = None

    @property
    def hypotheses_hold(self) -> bool:
        return all(self.hypotheses.values())
