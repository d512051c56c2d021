"""
Sparse polynomials with exact coefficients.

A polynomial maps exponent tuples to coefficients and never stores a zero
coefficient. Symbolic work uses Fraction coefficients. The same class also
carries float coefficients (charts at irrational angles) and Residue
coefficients (exact evaluation along irrational directions), since only
ring operations are needed.
"""
from __future__ import annotations

import math
from fractions import Fraction
from types import MappingProxyType
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from umbilic_atlas.statuses import InvalidArgumentError, InvariantViolation

Exponent = Tuple[int, ...]
NEG_INF_DEGREE = -math.inf

PLANE_VARIABLES = ('x', 'y')
SPHERE_VARIABLES = ('u', 'v', 'w')
CHART_VARIABLES = ('v', 'w')


def as_coefficient(value):
    """Promote ints to Fraction; leave Fraction, float and Residue alone."""
    if isinstance(value, bool):
        raise TypeError("booleans are not polynomial coefficients")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, (Fraction, float, Residue)):
        return value
    if isinstance(value, np.floating):
        return float(value)
    raise TypeError(f"unsupported coefficient type {type(value).__name__}")


class Poly:
    """
    Immutable sparse polynomial over a fixed tuple of variable names.
    """
    VARIABLES: Tuple[str, ...] = ()
    __slots__ = ('_terms', 'variables', '_hash')

    def __init__(self, terms: Union[Mapping[Exponent, object], Iterable[Tuple[Exponent, object]], None] = None,
                 variables: Optional[Sequence[str]] = None):
        self.variables = tuple(variables) if variables is not None else self.VARIABLES
        self._hash = None
        clean: Dict[Exponent, object] = {}
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            nvars = len(self.variables)
            for exps, coeff in items:
                exps = tuple(int(e) for e in exps)
                if len(exps) != nvars:
                    raise InvalidArgumentError(f"exponent {exps} does not match variables {self.variables}")
                if any(e < 0 for e in exps):
                    raise InvalidArgumentError(f"negative exponent in {exps}")
                c = as_coefficient(coeff)
                if exps in clean:
                    c = clean[exps] + c
                    if c == 0:
                        del clean[exps]
                    else:
                        clean[exps] = c
                elif c != 0:
                    clean[exps] = c
        self._terms = clean

    # -- construction -------------------------------------------------------

    def _new(self, terms: Dict[Exponent, object], variables: Optional[Tuple[str, ...]] = None) -> 'Poly':
        variables = self.variables if variables is None else variables
        cls = poly_class(variables)
        obj = object.__new__(cls)
        obj.variables = variables
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, value, variables: Optional[Sequence[str]] = None) -> 'Poly':
        variables = tuple(variables) if variables is not None else cls.VARIABLES
        return poly_class(variables)({(0,) * len(variables): value}, variables)

    @classmethod
    def zero(cls, variables: Optional[Sequence[str]] = None) -> 'Poly':
        variables = tuple(variables) if variables is not None else cls.VARIABLES
        return poly_class(variables)({}, variables)

    @classmethod
    def gen(cls, name: str, variables: Optional[Sequence[str]] = None) -> 'Poly':
        variables = tuple(variables) if variables is not None else cls.VARIABLES
        if name not in variables:
            raise InvalidArgumentError(f"unknown variable {name!r}")
        exps = tuple(1 if v == name else 0 for v in variables)
        return poly_class(variables)({exps: 1}, variables)

    @classmethod
    def gens(cls, variables: Optional[Sequence[str]] = None) -> Tuple['Poly', ...]:
        variables = tuple(variables) if variables is not None else cls.VARIABLES
        return tuple(cls.gen(v, variables) for v in variables)

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> Mapping[Exponent, object]:
        return MappingProxyType(self._terms)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def degree(self):
        """Total degree; the zero polynomial has degree -inf."""
        if not self._terms:
            return NEG_INF_DEGREE
        return max(sum(e) for e in self._terms)

    def index_of(self, var: str) -> int:
        try:
            return self.variables.index(var)
        except ValueError:
            raise InvalidArgumentError(f"{var!r} is not a variable of this polynomial") from None

    def degree_in(self, var: str):
        k = self.index_of(var)
        if not self._terms:
            return NEG_INF_DEGREE
        return max(e[k] for e in self._terms)

    def coefficient(self, exps: Exponent):
        return self._terms.get(tuple(exps), 0)

    def constant_term(self):
        return self._terms.get((0,) * self.nvars, 0)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def max_abs_coefficient(self) -> float:
        if not self._terms:
            return 0.0
        return max(abs(_to_float(c)) for c in self._terms.values())

    def sorted_terms(self) -> List[Tuple[Exponent, object]]:
        """Terms in graded-lex order, highest first."""
        return sorted(self._terms.items(), key=lambda kv: (-sum(kv[0]), tuple(-e for e in kv[0])))

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> 'Poly':
        if isinstance(other, Poly):
            if other.variables != self.variables:
                raise InvalidArgumentError(
                    f"variable mismatch: {self.variables} vs {other.variables}")
            return other
        return self._new({(0,) * self.nvars: as_coefficient(other)} if other != 0 else {})

    def __add__(self, other) -> 'Poly':
        other = self._coerce(other)
        out = dict(self._terms)
        for exps, c in other._terms.items():
            if exps in out:
                s = out[exps] + c
                if s == 0:
                    del out[exps]
                else:
                    out[exps] = s
            else:
                out[exps] = c
        return self._new(out)

    __radd__ = __add__

    def __neg__(self) -> 'Poly':
        return self._new({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> 'Poly':
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> 'Poly':
        return self._coerce(other) - self

    def __mul__(self, other) -> 'Poly':
        if not isinstance(other, Poly):
            c = as_coefficient(other)
            if c == 0:
                return self._new({})
            return self._new({e: v * c for e, v in self._terms.items()})
        other = self._coerce(other)
        return self.mul_truncated(other, None)

    __rmul__ = __mul__

    def mul_truncated(self, other: 'Poly', max_degree: Optional[int]) -> 'Poly':
        """Product keeping only terms of total degree <= max_degree."""
        other = self._coerce(other)
        out: Dict[Exponent, object] = {}
        for e1, c1 in self._terms.items():
            d1 = sum(e1)
            for e2, c2 in other._terms.items():
                if max_degree is not None and d1 + sum(e2) > max_degree:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                if e in out:
                    out[e] = out[e] + c1 * c2
                else:
                    out[e] = c1 * c2
        return self._new({e: c for e, c in out.items() if c != 0})

    def __truediv__(self, other) -> 'Poly':
        if isinstance(other, Poly):
            raise TypeError("polynomial division is not supported; use exact_divide_monomial")
        c = as_coefficient(other)
        return self._new({e: v / c for e, v in self._terms.items()})

    def __pow__(self, k: int) -> 'Poly':
        if not isinstance(k, int) or k < 0:
            raise InvalidArgumentError("exponent must be a nonnegative integer")
        result = self.constant(1, self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.variables == other.variables and self._terms == other._terms
        if isinstance(other, (int, Fraction, float)):
            if other == 0:
                return not self._terms
            return self._terms == {(0,) * self.nvars: other}
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.to_text()!r})"

    def __str__(self) -> str:
        return self.to_text()

    def to_text(self) -> str:
        from polynomials.parser import format_poly
        return format_poly(self)

    # -- calculus and structure ---------------------------------------------

    def partial(self, var: str, order: int = 1) -> 'Poly':
        """Exact formal partial derivative of the given order."""
        if order < 0:
            raise InvalidArgumentError("derivative order must be nonnegative")
        k = self.index_of(var)
        out: Dict[Exponent, object] = {}
        for exps, c in self._terms.items():
            e = exps[k]
            if e < order:
                continue
            factor = math.perm(e, order)
            new = list(exps)
            new[k] = e - order
            out[tuple(new)] = c * factor
        return self._new(out)

    def homogeneous_part(self, d: int) -> 'Poly':
        return self._new({e: c for e, c in self._terms.items() if sum(e) == d})

    def homogeneous_components(self) -> List['Poly']:
        """[f_0, ..., f_n]; empty for the zero polynomial."""
        if not self._terms:
            return []
        n = int(self.degree())
        buckets: List[Dict[Exponent, object]] = [dict() for _ in range(n + 1)]
        for e, c in self._terms.items():
            buckets[sum(e)][e] = c
        return [self._new(b) for b in buckets]

    def truncate(self, max_degree: int) -> 'Poly':
        return self._new({e: c for e, c in self._terms.items() if sum(e) <= max_degree})

    def map_coefficients(self, fn: Callable[[object], object]) -> 'Poly':
        out = {}
        for e, c in self._terms.items():
            v = as_coefficient(fn(c))
            if v != 0:
                out[e] = v
        return self._new(out)

    def exact_divide_monomial(self, var: str, k: int = 1) -> 'Poly':
        """Divide by var**k; every term must contain the factor."""
        idx = self.index_of(var)
        out = {}
        for exps, c in self._terms.items():
            if exps[idx] < k:
                raise InvariantViolation(
                    f"{self.to_text()} is not divisible by {var}^{k}")
            new = list(exps)
            new[idx] -= k
            out[tuple(new)] = c
        return self._new(out)

    def restrict(self, var: str, value) -> 'Poly':
        """Substitute a constant for var, keeping the variable tuple."""
        idx = self.index_of(var)
        value = as_coefficient(value)
        out: Dict[Exponent, object] = {}
        for exps, c in self._terms.items():
            e = exps[idx]
            coeff = c if e == 0 else c * value ** e
            if coeff == 0:
                continue
            new = list(exps)
            new[idx] = 0
            key = tuple(new)
            out[key] = out[key] + coeff if key in out else coeff
        return self._new({e: c for e, c in out.items() if c != 0})

    def drop_variable(self, var: str) -> 'Poly':
        """Remove a variable that does not occur."""
        idx = self.index_of(var)
        if any(e[idx] for e in self._terms):
            raise InvalidArgumentError(f"{var!r} still occurs in the polynomial")
        variables = self.variables[:idx] + self.variables[idx + 1:]
        return self._new({e[:idx] + e[idx + 1:]: c for e, c in self._terms.items()}, variables)

    def compose(self, substitutions: Sequence['Poly'], variables: Optional[Sequence[str]] = None) -> 'Poly':
        """Replace the i-th variable by substitutions[i]."""
        if len(substitutions) != self.nvars:
            raise InvalidArgumentError("one substitution per variable is required")
        if variables is None:
            variables = substitutions[0].variables if substitutions else self.variables
        variables = tuple(variables)
        result = poly_class(variables).zero(variables)
        cache: List[Dict[int, Poly]] = [dict() for _ in substitutions]

        def power(i: int, e: int) -> Poly:
            if e not in cache[i]:
                cache[i][e] = substitutions[i] ** e
            return cache[i][e]

        for exps, c in self.sorted_terms():
            term = poly_class(variables).constant(c, variables)
            for i, e in enumerate(exps):
                if e:
                    term = term * power(i, e)
            result = result + term
        return result

    def evaluate(self, point: Sequence[object]):
        """Exact evaluation at a point of Fractions, Residues or floats."""
        if len(point) != self.nvars:
            raise InvalidArgumentError("point dimension does not match variables")
        values = [as_coefficient(p) if not isinstance(p, float) else p for p in point]
        powers: List[Dict[int, object]] = [dict() for _ in values]
        total = 0
        for exps, c in self._terms.items():
            term = c
            for i, e in enumerate(exps):
                if e:
                    if e not in powers[i]:
                        powers[i][e] = values[i] ** e
                    term = term * powers[i][e]
            total = term + total
        return total

    # -- univariate views ---------------------------------------------------

    def univariate_coefficients(self, var: str) -> List[object]:
        """Coefficients low to high; the polynomial must involve only var."""
        k = self.index_of(var)
        if any(e[j] for e in self._terms for j in range(self.nvars) if j != k):
            raise InvalidArgumentError(f"polynomial is not univariate in {var!r}")
        if not self._terms:
            return []
        deg = max(e[k] for e in self._terms)
        coeffs: List[object] = [Fraction(0)] * (deg + 1)
        for e, c in self._terms.items():
            coeffs[e[k]] = c
        return coeffs

    @classmethod
    def from_univariate(cls, coeffs: Sequence[object], var: str,
                        variables: Optional[Sequence[str]] = None) -> 'Poly':
        variables = tuple(variables) if variables is not None else cls.VARIABLES
        k = variables.index(var)
        terms = {}
        for i, c in enumerate(coeffs):
            exps = [0] * len(variables)
            exps[k] = i
            terms[tuple(exps)] = c
        return poly_class(variables)(terms, variables)

    def coefficients_in(self, var: str) -> Dict[int, 'Poly']:
        """Coefficients with respect to var, as polynomials free of var."""
        k = self.index_of(var)
        grouped: Dict[int, Dict[Exponent, object]] = {}
        for exps, c in self._terms.items():
            rest = list(exps)
            rest[k] = 0
            grouped.setdefault(exps[k], {})[tuple(rest)] = c
        return {d: self._new(t) for d, t in grouped.items()}

    # -- float evaluation ---------------------------------------------------

    def compile(self, absolute: bool = False) -> Callable[..., np.ndarray]:
        """
        Vectorised float evaluator f(*arrays) -> ndarray.

        With absolute=True evaluates sum |c| * |monomial|, the scale used to
        normalise residuals.
        """
        items = list(self._terms.items())
        nvars = self.nvars
        exps = np.array([e for e, _ in items], dtype=int).reshape(len(items), nvars)
        coeffs = np.array([_to_float(c) for _, c in items], dtype=float)
        if absolute:
            coeffs = np.abs(coeffs)
        max_exp = exps.max(axis=0) if len(items) else np.zeros(nvars, dtype=int)

        def evaluate(*args) -> np.ndarray:
            arrays = [np.asarray(a, dtype=float) for a in args]
            if absolute:
                arrays = [np.abs(a) for a in arrays]
            shape = np.broadcast(*arrays).shape if arrays else ()
            out = np.zeros(shape)
            powers = []
            for k in range(nvars):
                table = [np.ones(shape)]
                for _ in range(int(max_exp[k])):
                    table.append(table[-1] * arrays[k])
                powers.append(table)
            for row, c in zip(exps, coeffs):
                term = c
                for k in range(nvars):
                    if row[k]:
                        term = term * powers[k][row[k]]
                out = out + term
            return out

        return evaluate


class BiPoly(Poly):
    """Polynomial in the plane variables (x, y)."""
    VARIABLES = PLANE_VARIABLES
    __slots__ = ()


class TriPoly(Poly):
    """Polynomial in the sphere variables (u, v, w); w stands for omega."""
    VARIABLES = SPHERE_VARIABLES
    __slots__ = ()


class ChartPoly(Poly):
    """Polynomial in chart coordinates (v, w)."""
    VARIABLES = CHART_VARIABLES
    __slots__ = ()


_CLASSES = {PLANE_VARIABLES: BiPoly, SPHERE_VARIABLES: TriPoly, CHART_VARIABLES: ChartPoly}


def poly_class(variables: Tuple[str, ...]):
    return _CLASSES.get(tuple(variables), Poly)


def _to_float(c) -> float:
    if isinstance(c, Residue):
        raise InvalidArgumentError("residue coefficients need an explicit root to become floats")
    return float(c)


# -- residue ring -----------------------------------------------------------

def _poly_rem(coeffs: List[Fraction], modulus: Tuple[Fraction, ...]) -> List[Fraction]:
    """Remainder of coeffs (low to high) by a monic modulus."""
    r = list(coeffs)
    d = len(modulus) - 1
    while len(r) > d:
        lead = r.pop()
        if lead != 0:
            shift = len(r) - d
            for i in range(d):
                r[shift + i] -= lead * modulus[i]
    while r and r[-1] == 0:
        r.pop()
    return r


class Residue:
    """
    Element of Q[t]/(m(t)) for a square-free modulus m.

    Used to evaluate identities exactly at a real root of m without
    algebraic-number arithmetic: an identity that holds at every root of m
    holds as an equality of residues.
    """
    __slots__ = ('coeffs', 'modulus')

    def __init__(self, coeffs: Sequence[object], modulus: Sequence[object]):
        mod = [Fraction(c) for c in modulus]
        while mod and mod[-1] == 0:
            mod.pop()
        if len(mod) < 2:
            raise InvalidArgumentError("residue modulus must have positive degree")
        lead = mod[-1]
        self.modulus = tuple(c / lead for c in mod)
        self.coeffs = tuple(_poly_rem([Fraction(c) for c in coeffs], self.modulus))

    @classmethod
    def generator(cls, modulus: Sequence[object]) -> 'Residue':
        return cls([0, 1], modulus)

    def _lift(self, other) -> Optional['Residue']:
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise InvalidArgumentError("residues over different moduli")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Residue([other], self.modulus)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        b = list(o.coeffs) + [Fraction(0)] * (n - len(o.coeffs))
        return Residue([x + y for x, y in zip(a, b)], self.modulus)

    __radd__ = __add__

    def __neg__(self):
        return Residue([-c for c in self.coeffs], self.modulus)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return Residue([], self.modulus)
        prod = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                prod[i + j] += a * b
        return Residue(prod, self.modulus)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Residue([c / Fraction(other) for c in self.coeffs], self.modulus)
        return NotImplemented

    def __pow__(self, k: int):
        result = Residue([1], self.modulus)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, float):
            return False
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self) -> int:
        if len(self.coeffs) <= 1:
            return hash(self.coeffs[0] if self.coeffs else Fraction(0))
        return hash((self.coeffs, self.modulus))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_rational(self) -> bool:
        return len(self.coeffs) <= 1

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise InvalidArgumentError("residue is not a rational constant")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def to_float(self, t: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * t + float(c)
        return acc

    def __repr__(self) -> str:
        return f"Residue({[str(c) for c in self.coeffs]} mod {[str(c) for c in self.modulus]})"
