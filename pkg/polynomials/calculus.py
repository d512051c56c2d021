"""
Formal calculus on sparse polynomials.
"""
from typing import List

from polynomials.models import Poly
from umbilic_atlas.statuses import InvalidArgumentError


def partial(f: Poly, var: str, order: int = 1) -> Poly:
    """Exact formal partial derivative."""
    return f.partial(var, order)


def homogeneous_decompose(f: Poly) -> List[Poly]:
    """
    [f_0, ..., f_n] with f = sum f_i and f_i homogeneous of degree i (or zero).

    The zero polynomial decomposes into the empty list.
    """
    return f.homogeneous_components()


def euler_defect(fi: Poly, degree: int) -> Poly:
    """i*f_i - sum x_k d f_i / d x_k; zero for every homogeneous f_i of degree i."""
    total = fi * degree
    for var in fi.variables:
        total = total - Poly.gen(var, fi.variables) * fi.partial(var)
    return total


def binary_form_coefficients(form: Poly) -> List:
    """Coefficients (low to high in t) of form(1, t) for a binary form."""
    if form.nvars != 2:
        raise InvalidArgumentError("binary forms have exactly two variables")
    if form.is_zero():
        return []
    n = int(form.degree())
    coeffs = [0] * (n + 1)
    for (i, j), c in form.terms.items():
        coeffs[j] = c
    return coeffs
