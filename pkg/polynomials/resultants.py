"""
Resultants of bivariate polynomials.

Res(f, g) with respect to the eliminated variable is the determinant of the
Sylvester matrix with f's coefficient rows on top (m = deg g rows of f, then
k = deg f rows of g, leading coefficients first). For example
Res_y(y - x, y + x) = 2x and Res_y(x*y - 1, y) = 1.

The determinant is computed by evaluating the kept variable at integer nodes,
taking exact integer (Bareiss) determinants, and interpolating the results.
"""
import logging
import math
from fractions import Fraction
from functools import reduce
from typing import List, Sequence

from polynomials.models import Poly
from umbilic_atlas.statuses import DegenerateInputError, InvalidArgumentError

logger = logging.getLogger('polynomials')


def bareiss_determinant(matrix: List[List[int]]) -> int:
    """Fraction-free Gaussian elimination on an integer matrix."""
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if pivot is None:
                return 0
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        akk = m[k][k]
        for i in range(k + 1, n):
            aik = m[i][k]
            row_i = m[i]
            row_k = m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return sign * m[n - 1][n - 1]


def sylvester_matrix(f: Sequence, g: Sequence) -> List[list]:
    """Sylvester matrix of two coefficient lists given high degree first."""
    k = len(f) - 1
    m = len(g) - 1
    size = k + m
    rows = []
    for i in range(m):
        rows.append([0] * i + list(f) + [0] * (size - k - 1 - i))
    for i in range(k):
        rows.append([0] * i + list(g) + [0] * (size - m - 1 - i))
    return rows


def _lcm_denominator(p: Poly) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b),
                  (Fraction(c).denominator for c in p.terms.values()), 1)


def newton_interpolate(nodes: Sequence[int], values: Sequence[int]) -> List[Fraction]:
    """Coefficients (low to high) of the interpolating polynomial."""
    n = len(nodes)
    coef = [Fraction(v) for v in values]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (nodes[i] - nodes[i - j])
    result = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        # result = result * (x - nodes[i]) + coef[i]
        shifted = [Fraction(0)] + result[:-1]
        result = [s - nodes[i] * r for s, r in zip(shifted, result)]
        result[0] += coef[i]
    return result


def resultant(f: Poly, g: Poly, eliminate: str = 'y') -> Poly:
    """
    Sylvester resultant of f and g with respect to `eliminate`.

    Returns a polynomial in the same variable tuple that involves only the
    kept variable. Vanishes identically iff f and g share a factor of
    positive degree in the eliminated variable.
    """
    if f.variables != g.variables or f.nvars != 2:
        raise InvalidArgumentError("resultant needs two bivariate polynomials over the same variables")
    if f.is_zero() or g.is_zero():
        raise InvalidArgumentError("resultant of the zero polynomial")
    idx = f.index_of(eliminate)
    keep = f.variables[1 - idx]
    k = int(f.degree_in(eliminate))
    m = int(g.degree_in(eliminate))
    if k == 0 and m == 0:
        raise DegenerateInputError(f"both polynomials are constant in {eliminate!r}")

    # Scale to integer coefficients; the determinant scales by lf**m * lg**k.
    lf = _lcm_denominator(f)
    lg = _lcm_denominator(g)
    fi = f * lf
    gi = g * lg
    f_rows = _coefficient_polys(fi, eliminate, keep, k)
    g_rows = _coefficient_polys(gi, eliminate, keep, m)

    deg_keep_f = max(len(c) - 1 for c in f_rows)
    deg_keep_g = max(len(c) - 1 for c in g_rows)
    bound = max(m * max(deg_keep_f, 0) + k * max(deg_keep_g, 0), 0)
    nodes = list(range(bound + 1))
    values = []
    for x in nodes:
        fv = [_eval_int(c, x) for c in f_rows]
        gv = [_eval_int(c, x) for c in g_rows]
        values.append(bareiss_determinant(sylvester_matrix(fv, gv)))
    coeffs = newton_interpolate(nodes, values)
    scale = Fraction(lf) ** m * Fraction(lg) ** k
    coeffs = [c / scale for c in coeffs]
    result = Poly.from_univariate(coeffs, keep, f.variables)
    logger.debug(f"Resultant in {keep} of degree {result.degree()} ({len(nodes)} evaluations)")
    return result


def _coefficient_polys(p: Poly, var: str, keep: str, deg: int) -> List[List[int]]:
    """Integer coefficient lists (in `keep`) of p's powers of var, high first."""
    by_power = p.coefficients_in(var)
    kidx = p.index_of(keep)
    rows = []
    for d in range(deg, -1, -1):
        c = by_power.get(d)
        if c is None:
            rows.append([0])
            continue
        top = max(e[kidx] for e in c.terms)
        dense = [0] * (top + 1)
        for e, v in c.terms.items():
            dense[e[kidx]] = int(v)
        rows.append(dense)
    return rows


def _eval_int(coeffs: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc
