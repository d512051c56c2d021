"""
Exact identity checks for the principal form and its sphere extension.

Every check compares two exact polynomials; there is no tolerance. A failed
check in strict mode raises InvariantViolation, since each identity holds
for every input and a mismatch means the construction is wrong.
"""
import logging
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Dict, Tuple

from curvature.forms import hessian_det, homogenize_hessian
from curvature.sphere import ExtendedForm, extended_form
from polynomials.calculus import euler_defect, homogeneous_decompose
from polynomials.models import Poly, TriPoly
from umbilic_atlas.statuses import DegenerateInputError, InvariantViolation

logger = logging.getLogger('curvature')


@dataclass(frozen=True)
class EquatorCheck:
    lhs: Poly
    rhs: Poly

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class IdentityReport:
    euler: bool
    omega_divisibility: bool
    equator_uAvB: bool
    equator_uBvC: bool
    t_equator: bool
    hessian_restriction: bool
    degree_bound: bool

    @property
    def all_hold(self) -> bool:
        return all(asdict(self).values())

    def to_dict(self) -> Dict[str, bool]:
        return {**asdict(self), 'all_hold': self.all_hold}


def lift_form(p: Poly) -> TriPoly:
    """A binary form in (x, y) as a polynomial in (u, v, w) free of w."""
    return TriPoly({(i, j, 0): c for (i, j), c in p.terms.items()})


def equator_identities(ext: ExtendedForm, f: Poly, strict: bool = True) -> Dict[str, EquatorCheck]:
    """
    Restrictions of the off-diagonal entries to the equator:

        (uA + vB/2)|w=0 = -n/(2(n-1)) v f_n |Hess f_n|
        (uB/2 + vC)|w=0 = +n/(2(n-1)) u f_n |Hess f_n|
        T|w=0          = n f_n (d_u f_{n-1} d_v f_n - d_v f_{n-1} d_u f_n)
    """
    n = ext.n
    u, v, _ = TriPoly.gens()
    parts = homogeneous_decompose(f)
    fn = parts[n]
    fn1 = parts[n - 1]
    x, y = f.variables
    Fn = lift_form(fn)
    Hn = lift_form(hessian_det(fn))
    bracket = lift_form(fn1.partial(x) * fn.partial(y) - fn1.partial(y) * fn.partial(x))
    k = Fraction(n, 2 * (n - 1))

    checks = {
        'equator_uAvB': EquatorCheck(
            (u * ext.A + v * ext.B / 2).restrict('w', 0),
            v * Fn * Hn * (-k)),
        'equator_uBvC': EquatorCheck(
            (u * ext.B / 2 + v * ext.C).restrict('w', 0),
            u * Fn * Hn * k),
        't_equator': EquatorCheck(
            ext.T.restrict('w', 0),
            Fn * bracket * n),
    }
    for name, check in checks.items():
        if not check.holds:
            logger.error(f"Equator identity {name} fails for {f.to_text()}")
            if strict:
                raise InvariantViolation(f"equator identity {name} fails",
                                         details={'lhs': check.lhs.to_text(), 'rhs': check.rhs.to_text()})
    return checks


def _euler_holds(f: Poly) -> bool:
    return all(euler_defect(fi, i).is_zero() for i, fi in enumerate(homogeneous_decompose(f)))


def _hessian_checks(f: Poly) -> Tuple[bool, bool]:
    """(restriction identities, degree bound) for |Hess f|."""
    n = int(f.degree())
    H = hessian_det(f)
    degree_ok = H.is_zero() or H.degree() <= 2 * n - 4
    try:
        homogenize_hessian(f)
        restriction_ok = True
    except DegenerateInputError:
        # H == 0, so its top part is zero and |Hess f_n| must vanish too.
        restriction_ok = hessian_det(homogeneous_decompose(f)[n]).is_zero()
    except InvariantViolation as e:
        logger.error(f"Hessian restriction fails: {e.message}")
        restriction_ok = False
    return restriction_ok, degree_ok


def identity_suite(f: Poly, strict: bool = False) -> IdentityReport:
    """
    Run every exact identity on f.

    Extension failures (the w-quotient or the homogeneity of A, B, C, T)
    surface as False unless strict is set.
    """
    euler = _euler_holds(f)
    restriction_ok, degree_ok = _hessian_checks(f)
    try:
        ext = extended_form(f)
        divisible = True
    except InvariantViolation as e:
        if strict:
            raise
        logger.error(f"Sphere extension failed: {e.message}")
        divisible = False
        ext = None

    eq = {'equator_uAvB': False, 'equator_uBvC': False, 't_equator': False}
    if ext is not None:
        eq = {name: check.holds for name, check in equator_identities(ext, f, strict=strict).items()}

    report = IdentityReport(
        euler=euler,
        omega_divisibility=divisible,
        hessian_restriction=restriction_ok,
        degree_bound=degree_ok,
        **eq,
    )
    logger.info(f"Identity suite for {f.to_text()}: all_hold={report.all_hold}")
    return report
