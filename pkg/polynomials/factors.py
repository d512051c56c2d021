"""
Real linear factors of binary forms.

A real linear factor of f_n is recorded by the direction on which it
vanishes: angle theta in [0, pi) with f_n(cos theta, sin theta) = 0. The
direction is also kept exactly as (alpha, beta) with beta/alpha = t a root of
f_n(1, t); irrational t is represented by a Residue modulo the square-free
factor that isolates it. The factor u (zero direction (0, 1)) is detected
from the degree drop of f_n(1, t).
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from polynomials.calculus import binary_form_coefficients
from polynomials.models import Poly, Residue
from polynomials.roots import DEFAULT_WIDTH_BITS, RootInterval, isolate_real_roots, trim
from umbilic_atlas.statuses import DegenerateInputError, InvalidArgumentError

logger = logging.getLogger('polynomials')


@dataclass(frozen=True)
class LinearFactor:
    theta: float
    multiplicity: int
    alpha: object = field(repr=False)
    beta: object = field(repr=False)
    root: Optional[RootInterval] = field(default=None, repr=False)

    @property
    def t_value(self) -> Optional[float]:
        """beta/alpha as a float, None for the factor u."""
        if self.alpha == 0:
            return None
        return self.root.to_float() if self.root is not None else float(self.beta)

    @property
    def is_rational(self) -> bool:
        return not isinstance(self.beta, Residue)

    @property
    def direction(self) -> Tuple[float, float]:
        return (math.cos(self.theta), math.sin(self.theta))

    @property
    def factor_coefficients(self) -> Tuple[float, float]:
        """(a, b) of the factor a*u + b*v, unit length."""
        return (-math.sin(self.theta), math.cos(self.theta))

    def to_float(self, value) -> float:
        """Float value of an exact quantity computed along this direction."""
        if isinstance(value, Residue):
            return value.to_float(self.t_value)
        return float(value)

    def vanishes(self, form: Poly) -> bool:
        """Whether the binary form vanishes exactly on this direction."""
        if form.is_zero():
            return True
        if not form.is_homogeneous():
            raise InvalidArgumentError("vanishes() expects a homogeneous binary form")
        coeffs = binary_form_coefficients(form)
        if self.alpha == 0:
            return coeffs[-1] == 0
        if self.is_rational:
            t = Fraction(self.beta) / Fraction(self.alpha)
            return sum(Fraction(c) * t ** j for j, c in enumerate(coeffs)) == 0
        return self.root.shares_root(coeffs)

    def value_vanishes(self, value) -> bool:
        """Whether an exact scalar (Fraction or Residue) is zero at this root."""
        if not isinstance(value, Residue):
            return value == 0
        if not value.coeffs:
            return True
        return self.root.shares_root(list(value.coeffs))


@dataclass(frozen=True)
class LinearFactorization:
    count: int
    factors: List[LinearFactor]

    @property
    def R(self) -> int:
        return self.count

    @property
    def all_simple(self) -> bool:
        return all(f.multiplicity == 1 for f in self.factors)


def real_linear_factors(fn: Poly, bits: int = DEFAULT_WIDTH_BITS) -> LinearFactorization:
    """
    Distinct real linear factors of a nonzero binary form, with multiplicities.

    Computed from the real roots of t -> f_n(1, t) plus the power of the
    first variable dividing f_n.
    """
    if fn.is_zero():
        raise DegenerateInputError("the zero form has no factorization")
    if fn.nvars != 2 or not fn.is_homogeneous():
        raise InvalidArgumentError("real_linear_factors expects a homogeneous binary form")
    n = int(fn.degree())
    coeffs = trim(binary_form_coefficients(fn))
    factors: List[LinearFactor] = []
    if len(coeffs) > 1:
        for interval in isolate_real_roots(coeffs, bits=bits):
            t0 = interval.to_float()
            theta = math.atan(t0)
            if theta < 0:
                theta += math.pi
            if interval.is_exact:
                beta = interval.lo
            else:
                beta = Residue.generator(interval.factor)
            factors.append(LinearFactor(theta, interval.multiplicity, Fraction(1), beta, interval))
    u_power = n - (len(coeffs) - 1)
    if u_power > 0:
        factors.append(LinearFactor(math.pi / 2, u_power, Fraction(0), Fraction(1), None))
    factors.sort(key=lambda f: f.theta)
    logger.debug(f"Form of degree {n} has {len(factors)} real linear factors")
    return LinearFactorization(len(factors), factors)
