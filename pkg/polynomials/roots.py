"""
Univariate real-root isolation.

Roots are isolated with Sturm chains on each square-free factor of Yun's
decomposition. Chains are built from positively scaled pseudo-remainders on
primitive integer polynomials, so sign sequences are exact and coefficient
growth stays moderate. Every interval either has distinct non-root endpoints
with exactly one root strictly inside, or is degenerate [r, r] for an exact
rational root r hit during bisection.

Coefficient lists are ordered from low to high degree throughout.
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import List, Optional, Sequence, Tuple, Union

from polynomials.models import Poly
from umbilic_atlas import settings
from umbilic_atlas.statuses import DegenerateInputError, InvalidArgumentError

logger = logging.getLogger('polynomials')

IntPoly = Tuple[int, ...]

DEFAULT_WIDTH_BITS = settings.ROOT_WIDTH_BITS


# -- dense helpers ------------------------------------------------------------

def trim(coeffs: Sequence) -> list:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return out


def degree(coeffs: Sequence) -> int:
    return len(trim(coeffs)) - 1


def derivative(coeffs: Sequence) -> list:
    return [i * c for i, c in enumerate(coeffs)][1:]


def to_integer(coeffs: Sequence) -> List[int]:
    """Clear denominators; the result is a positive multiple of the input."""
    fracs = [Fraction(c) for c in trim(coeffs)]
    if not fracs:
        return []
    lcm = reduce(lambda a, b: a * b // math.gcd(a, b), (c.denominator for c in fracs), 1)
    return [int(c * lcm) for c in fracs]


def primitive(coeffs: Sequence[int]) -> List[int]:
    """Divide by the (positive) content; the sign of the polynomial is kept."""
    c = trim(coeffs)
    if not c:
        return []
    g = reduce(math.gcd, (abs(x) for x in c))
    return [x // g for x in c]


def monic_sign(coeffs: Sequence[int]) -> List[int]:
    """Primitive form with positive leading coefficient."""
    c = primitive(coeffs)
    if c and c[-1] < 0:
        c = [-x for x in c]
    return c


def positive_pseudo_remainder(a: Sequence[int], b: Sequence[int]) -> List[int]:
    """
    A positive integer multiple of (a mod b).

    Each step multiplies by |lc(b)| instead of lc(b) so that the sign of the
    true remainder is preserved, which Sturm chains rely on.
    """
    r = trim(a)
    b = trim(b)
    if not b:
        raise InvalidArgumentError("division by the zero polynomial")
    db = len(b) - 1
    lb = b[-1]
    sign = 1 if lb > 0 else -1
    alb = abs(lb)
    while r and len(r) - 1 >= db:
        k = len(r) - 1 - db
        lr = r[-1]
        r = [alb * x for x in r]
        for i in range(db + 1):
            r[k + i] -= sign * lr * b[i]
        r = primitive(trim(r))
    return r


def gcd(a: Sequence, b: Sequence) -> List[int]:
    """Primitive gcd with positive leading coefficient (primitive PRS)."""
    a = monic_sign(to_integer(a))
    b = monic_sign(to_integer(b))
    while b:
        a, b = b, monic_sign(positive_pseudo_remainder(a, b))
    return a


def divmod_exact(a: Sequence, b: Sequence) -> Tuple[List[Fraction], List[Fraction]]:
    a = [Fraction(x) for x in trim(a)]
    b = [Fraction(x) for x in trim(b)]
    if not b:
        raise InvalidArgumentError("division by the zero polynomial")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    while r and len(r) >= len(b):
        k = len(r) - len(b)
        coeff = r[-1] / b[-1]
        q[k] = coeff
        for i, bc in enumerate(b):
            r[k + i] -= coeff * bc
        r = trim(r)
    return q, r


def exact_quotient(a: Sequence, b: Sequence) -> List[Fraction]:
    q, r = divmod_exact(a, b)
    if r:
        raise InvalidArgumentError("polynomial division is not exact")
    return q


def square_free_decomposition(coeffs: Sequence) -> List[Tuple[List[int], int]]:
    """
    Yun's algorithm: returns [(a_i, i)] with coeffs = c * prod a_i**i.

    Factors are primitive integer polynomials of positive degree.
    """
    f = [Fraction(c) for c in trim(coeffs)]
    if not f:
        raise DegenerateInputError("square-free decomposition of the zero polynomial")
    if len(f) == 1:
        return []
    fp = derivative(f)
    a0 = gcd(f, fp)
    b = exact_quotient(f, a0)
    c = exact_quotient(fp, a0)
    d = [x - y for x, y in _pad(c, derivative(b))]
    out: List[Tuple[List[int], int]] = []
    i = 1
    while degree(b) > 0:
        a = gcd(b, d) if trim(d) else monic_sign(to_integer(b))
        if degree(a) > 0:
            out.append((a, i))
        b = exact_quotient(b, a)
        c = exact_quotient(d, a) if trim(d) else []
        d = [x - y for x, y in _pad(c, derivative(b))]
        i += 1
    return out


def square_free_part(coeffs: Sequence) -> List[int]:
    parts = square_free_decomposition(coeffs)
    result = [1]
    for factor, _ in parts:
        result = multiply(result, factor)
    return monic_sign(result)


def multiply(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _pad(a: Sequence, b: Sequence):
    n = max(len(a), len(b))
    return zip(list(a) + [0] * (n - len(a)), list(b) + [0] * (n - len(b)))


# -- evaluation -----------------------------------------------------------------

def evaluate(coeffs: Sequence, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def sign_at(coeffs: Sequence[int], x: Fraction) -> int:
    """Exact sign of an integer polynomial at a rational point."""
    if not coeffs:
        return 0
    p, q = x.numerator, x.denominator
    acc = coeffs[-1]
    qpow = 1
    for c in reversed(coeffs[:-1]):
        qpow *= q
        acc = acc * p + c * qpow
    return (acc > 0) - (acc < 0)


def evaluate_float(coeffs: Sequence, x: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + float(c)
    return acc


# -- Sturm chains ---------------------------------------------------------------

def sturm_sequence(coeffs: Sequence[int]) -> List[List[int]]:
    p0 = primitive(to_integer(coeffs))
    seq = [p0]
    p1 = primitive(derivative(p0))
    if p1:
        seq.append(p1)
    while len(seq) >= 2 and degree(seq[-1]) > 0:
        r = positive_pseudo_remainder(seq[-2], seq[-1])
        if not r:
            break
        seq.append(primitive([-x for x in r]))
    return seq


def sign_variations(seq: Sequence[Sequence[int]], x: Fraction) -> int:
    signs = [s for s in (sign_at(p, x) for p in seq) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(seq: Sequence[Sequence[int]], lo: Fraction, hi: Fraction) -> int:
    """Number of distinct roots in (lo, hi]."""
    return sign_variations(seq, lo) - sign_variations(seq, hi)


def cauchy_bound(coeffs: Sequence[int]) -> Fraction:
    c = trim(coeffs)
    lead = abs(c[-1])
    return 1 + max((Fraction(abs(x), lead) for x in c[:-1]), default=Fraction(0))


# -- intervals --------------------------------------------------------------------

@dataclass(frozen=True)
class RootInterval:
    """
    An isolating interval for one real root.

    `factor` is the primitive square-free polynomial the root belongs to.
    """
    lo: Fraction
    hi: Fraction
    multiplicity: int
    factor: IntPoly = field(compare=False, repr=False, default=())

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def to_float(self) -> float:
        return float(self.midpoint())

    def refine(self, bits: int = DEFAULT_WIDTH_BITS) -> 'RootInterval':
        """Bisect until the width is at most 2**-bits."""
        if self.is_exact:
            return self
        target = Fraction(1, 2 ** bits)
        lo, hi = self.lo, self.hi
        f = list(self.factor)
        s_lo = sign_at(f, lo)
        while hi - lo > target:
            mid = (lo + hi) / 2
            s = sign_at(f, mid)
            if s == 0:
                return RootInterval(mid, mid, self.multiplicity, self.factor)
            if s == s_lo:
                lo = mid
            else:
                hi = mid
        return RootInterval(lo, hi, self.multiplicity, self.factor)

    def shares_root(self, other: Sequence) -> bool:
        """Whether the polynomial `other` vanishes at this root."""
        other = trim(other)
        if not other:
            return True
        if self.is_exact:
            return evaluate([Fraction(c) for c in other], self.lo) == 0
        h = gcd(list(self.factor), other)
        if degree(h) < 1:
            return False
        return count_roots(sturm_sequence(h), self.lo, self.hi) > 0 or sign_at(h, self.hi) == 0

    def vanishes(self, other: Sequence) -> bool:
        return self.shares_root(other)


RootIntervals = List[RootInterval]


def _isolate_square_free(factor: List[int], multiplicity: int) -> RootIntervals:
    seq = sturm_sequence(factor)
    bound = cauchy_bound(factor)
    pending = [(-bound, bound)]
    found: RootIntervals = []
    key = tuple(factor)
    while pending:
        lo, hi = pending.pop()
        n = count_roots(seq, lo, hi)
        if n == 0:
            continue
        if n == 1:
            found.append(RootInterval(lo, hi, multiplicity, key))
            continue
        mid = (lo + hi) / 2
        if sign_at(factor, mid) == 0:
            found.append(RootInterval(mid, mid, multiplicity, key))
            delta = (hi - lo) / 4
            while True:
                a, b = mid - delta, mid + delta
                if sign_at(factor, a) and sign_at(factor, b) and count_roots(seq, a, b) == 1:
                    break
                delta /= 2
            pending.append((lo, a))
            pending.append((b, hi))
        else:
            pending.append((lo, mid))
            pending.append((mid, hi))
    return found


def _separate(intervals: RootIntervals) -> RootIntervals:
    """Refine overlapping intervals (from different factors) until disjoint."""
    items = sorted(intervals, key=lambda r: (r.lo, r.hi))
    changed = True
    while changed:
        changed = False
        items.sort(key=lambda r: (r.lo, r.hi))
        for i in range(len(items) - 1):
            a, b = items[i], items[i + 1]
            if a.hi >= b.lo:
                if not a.is_exact:
                    items[i] = a.refine(_bits_for(a.width) + 1)
                if not b.is_exact:
                    items[i + 1] = b.refine(_bits_for(b.width) + 1)
                changed = True
                break
    return items


def _bits_for(width: Fraction) -> int:
    if width <= 0:
        return 0
    return max(0, -math.floor(math.log2(width)))


def _as_coefficients(p: Union[Poly, Sequence]) -> list:
    if isinstance(p, Poly):
        occurring = [v for i, v in enumerate(p.variables) if any(e[i] for e in p.terms)]
        if len(occurring) > 1:
            raise InvalidArgumentError("root isolation needs a univariate polynomial")
        if not occurring:
            c = p.constant_term()
            return [c] if c != 0 else []
        return p.univariate_coefficients(occurring[0])
    return list(p)


def isolate_real_roots(p: Union[Poly, Sequence], bits: Optional[int] = DEFAULT_WIDTH_BITS) -> RootIntervals:
    """
    Isolate every real root of a nonzero univariate polynomial.

    Returns disjoint intervals sorted left to right, each with the root's
    multiplicity, refined to width 2**-bits (pass bits=None to skip
    refinement).
    """
    coeffs = trim(_as_coefficients(p))
    if not coeffs:
        raise DegenerateInputError("cannot isolate the roots of the zero polynomial")
    intervals: RootIntervals = []
    for factor, multiplicity in square_free_decomposition(coeffs):
        intervals.extend(_isolate_square_free(factor, multiplicity))
    intervals = _separate(intervals)
    if bits is not None:
        intervals = [r.refine(bits) for r in intervals]
    logger.debug(f"Isolated {len(intervals)} real roots of a degree-{len(coeffs) - 1} polynomial")
    return intervals
