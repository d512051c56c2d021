"""
Analysis reports: the full pipeline on one polynomial and its JSON shape.

Exact values are kept as Fractions (serialised as "p/q"); values computed
along an irrational direction live in a residue ring and are reported as
floats evaluated at the root they stand for.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from curvature.forms import principal_form
from curvature.identities import IdentityReport, identity_suite
from curvature.sphere import extended_form
from polynomials.factors import LinearFactor, real_linear_factors
from polynomials.models import Poly, Residue
from polynomials.parser import parse_poly
from umbilic_atlas import settings
from umbilic_atlas.metrics import Timer, record_ledger, record_umbilics
from umbilic_atlas.statuses import DegenerateInputError, FormType
from umbilics.finite import search_finite_umbilics
from umbilics.infinity import count_bounds, infinity_umbilics, leading_form_type, parity_metadata
from umbilics.ledger import assemble_ledger
from umbilics.models import (CountBounds, FiniteSearch, InfinityUmbilic, LemonCertificate, PHLedger,
                             UmbilicPoint)

logger = logging.getLogger('rendering')


def exact_value(value, factor: Optional[LinearFactor] = None):
    """A Fraction as is, a Residue as its float value at the factor's root."""
    if isinstance(value, Residue):
        if value.is_rational():
            return value.rational_value()
        return factor.to_float(value) if factor is not None else None
    return value


def factor_to_dict(factor: LinearFactor) -> Dict[str, Any]:
    return {
        'theta': factor.theta,
        'multiplicity': factor.multiplicity,
        't': factor.t_value,
        'rational': factor.is_rational,
        'alpha': exact_value(factor.alpha, factor),
        'beta': exact_value(factor.beta, factor),
        'root_interval': None if factor.root is None else [factor.root.lo, factor.root.hi],
    }


def finite_to_dict(u: UmbilicPoint) -> Dict[str, Any]:
    return {
        'x': u.x,
        'y': u.y,
        'index_num_halves': u.index_num_halves,
        'residuals': list(u.residuals),
        'certified': u.certified,
        'point_class': u.point_class,
        'winding_radius': u.winding_radius,
    }


def certificate_to_dict(cert: Optional[LemonCertificate], factor: LinearFactor) -> Optional[Dict[str, Any]]:
    if cert is None:
        return None

    def ev(value):
        return exact_value(value, factor)

    return {
        'n': cert.n,
        'a': ev(cert.a),
        'b': ev(cert.b),
        'lam': ev(cert.lam),
        'const_C': ev(cert.constC),
        'lin_B': [ev(c) for c in cert.linB],
        'lin_Q': [ev(c) for c in cert.linQ],
        'lin_T': [ev(c) for c in cert.linT],
        'hessian_det': ev(cert.hessian_det),
        'model_hessian_det': ev(cert.model_hessian_det),
        'normalized_model_det': ev(cert.normalized_model_det),
        'matches': dict(cert.matches),
        'positive_definite': cert.positive_definite,
        'hypotheses_hold': cert.hypotheses_hold,
        'certified': cert.certified,
    }


def infinity_to_dicts(umbilics: Sequence[InfinityUmbilic]) -> List[Dict[str, Any]]:
    """One entry per equator point, ordered by angle in [0, 2 pi)."""
    out = []
    for u in umbilics:
        certificate = certificate_to_dict(u.certificate, u.factor)
        for k, winding in enumerate(u.windings):
            theta = math.fmod(u.theta + k * math.pi, 2 * math.pi)
            out.append({
                'theta': theta,
                'direction_theta': u.theta,
                'antipode': k,
                'multiplicity': u.multiplicity,
                'hf_sign': u.hf.sign if u.hf is not None else None,
                'hf': u.hf.value if u.hf is not None else None,
                'hf_exact': u.hf.exact if u.hf is not None else None,
                'index_num_halves': winding.index_num_halves,
                'certified': winding.certified,
                'winding_radius': winding.radius,
                'type': u.type,
                'certificate': certificate,
                'flat': u.flat,
                'source': u.source,
            })
    out.sort(key=lambda d: d['theta'])
    return out


def ledger_to_dict(ledger: PHLedger) -> Dict[str, Any]:
    return {
        'n': ledger.n,
        'R': ledger.R,
        'sum_halves': ledger.sum_halves,
        'rhs_halves': ledger.rhs_halves,
        'hypotheses': dict(ledger.hypotheses),
        'verdict': ledger.verdict,
        'certified': ledger.certified,
        'box': list(ledger.box),
        'finite_count': len(ledger.finite),
        'equator_sum_halves': ledger.equator_sum_halves,
        'sphere_total_halves': ledger.sphere_total_halves,
    }


def counts_to_dict(counts: Optional[CountBounds]) -> Optional[Dict[str, Any]]:
    if counts is None:
        return None
    return {'compact_hessian_curve': counts.compact, 'bound': counts.bound, 'count': counts.count,
            'applicable': counts.applicable, 'within': counts.within}


@dataclass
class AnalysisReport:
    """Everything `analyze` computes for one polynomial."""
    input: str
    f: Poly = field(repr=False)
    n: int
    homogeneous_parts: List[str]
    factors: List[LinearFactor]
    finite: FiniteSearch
    infinity: List[InfinityUmbilic]
    ledger: PHLedger
    identities: IdentityReport
    counts: Optional[CountBounds]
    leading_form_type: Optional[FormType]
    timing_ms: Optional[Dict[str, float]] = None

    @property
    def R(self) -> int:
        return len(self.factors)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'input': self.input,
            'n': self.n,
            'homogeneous_parts': self.homogeneous_parts,
            'R': self.R,
            'factors': [factor_to_dict(factor) for factor in self.factors],
            'leading_form_type': self.leading_form_type,
            'finite_umbilics': [finite_to_dict(u) for u in self.finite.umbilics],
            'finite_search': {
                'box': list(self.finite.box),
                'non_isolated': self.finite.non_isolated,
                'outside_box': self.finite.outside_box,
                'candidates': self.finite.candidates,
            },
            'infinity_umbilics': infinity_to_dicts(self.infinity),
            'count_bounds': counts_to_dict(self.counts),
            'parity': parity_metadata(self.n),
            'ph': ledger_to_dict(self.ledger),
            'identities': self.identities.to_dict(),
            'timing_ms': self.timing_ms,
        }


def parse_input(text: str) -> Poly:
    f = parse_poly(text)
    if f.is_zero() or f.degree() < 2:
        raise DegenerateInputError("the analysis needs a polynomial of degree >= 2",
                                   details={'input': text})
    return f


def analyze(text: str, box: Optional[Sequence[float]] = None, tol: Optional[float] = None,
            samples: Optional[int] = None, workers: Optional[int] = None,
            timing: Optional[bool] = None) -> AnalysisReport:
    """Parse, locate finite and infinity umbilics, run the ledger and the identity suite."""
    timing = settings.REPORT_TIMING if timing is None else timing
    stages: Dict[str, float] = {}

    with Timer('parse') as t:
        f = parse_input(text)
    stages['parse'] = t.elapsed_ms
    n = int(f.degree())
    factors = real_linear_factors(f.homogeneous_components()[n]).factors

    with Timer('finite') as t:
        search = search_finite_umbilics(principal_form(f), box, tol, samples, workers)
    stages['finite'] = t.elapsed_ms

    with Timer('infinity') as t:
        ext = extended_form(f)
        infinity = infinity_umbilics(f, samples, workers, [u.point for u in search.umbilics], ext=ext)
        counts = count_bounds(f, infinity)
    stages['infinity'] = t.elapsed_ms

    with Timer('ledger') as t:
        ledger = assemble_ledger(f, search, infinity)
    stages['ledger'] = t.elapsed_ms

    with Timer('identities') as t:
        identities = identity_suite(f)
    stages['identities'] = t.elapsed_ms

    record_umbilics('finite', len(search.umbilics))
    record_umbilics('infinity', 2 * len(infinity))
    record_ledger(ledger.sum_halves)
    if not identities.all_hold:
        logger.error(f"Exact identities fail for {text!r}: {identities.to_dict()}")

    return AnalysisReport(
        input=text,
        f=f,
        n=n,
        homogeneous_parts=[part.to_text() for part in f.homogeneous_components()],
        factors=list(factors),
        finite=search,
        infinity=infinity,
        ledger=ledger,
        identities=identities,
        counts=counts,
        leading_form_type=leading_form_type(f),
        timing_ms=stages if timing else None,
    )
