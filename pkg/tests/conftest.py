import os
import random
import sys
from pathlib import Path

import pytest

# Add project root to sys.path for imports
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from polynomials.factors import real_linear_factors  # noqa: E402
from polynomials.models import BiPoly  # noqa: E402
from polynomials.parser import parse_poly  # noqa: E402
from umbilics.infinity import coprime_on_factors  # noqa: E402

CORPUS = {
    'paraboloid': "x^2 + y^2",
    'saddle': "x*y",
    'hyperbolic_paraboloid': "x^2 - y^2",
    'monkey_saddle': "x^3 - 3*x*y^2 + x^2 + y^2",
    'quartic': "x^4 + y^4 - 4*x*y + x",
    'four_lines': "x*y*(x - y)*(x + 2*y) + x^2 + y^3",
}

RANDOM_SEED = 20240611


@pytest.fixture(scope="session")
def test_dir():
    """Return the path to the tests directory."""
    return Path(__file__).parent


@pytest.fixture(scope="session")
def corpus():
    """Named corpus polynomials, parsed."""
    return {name: parse_poly(text) for name, text in CORPUS.items()}


@pytest.fixture(scope="session")
def corpus_text():
    return dict(CORPUS)


def random_square_free_poly(rng: random.Random, n: int, coprime: bool = True, bound: int = 3) -> BiPoly:
    """
    A random integer polynomial of degree n whose leading form has only simple
    real linear factors and (for n >= 3) shares none with f_(n-1).
    """
    while True:
        terms = {}
        for d in range(n + 1):
            for i in range(d + 1):
                c = rng.randint(-bound, bound)
                if c:
                    terms[(i, d - i)] = c
        f = BiPoly(terms)
        if f.is_zero() or f.degree() != n:
            continue
        parts = f.homogeneous_components()
        factorization = real_linear_factors(parts[n])
        if not factorization.all_simple:
            continue
        if coprime and n >= 3 and not coprime_on_factors(parts[n], parts[n - 1], factorization.factors):
            continue
        return f


@pytest.fixture(scope="session")
def rng():
    return random.Random(RANDOM_SEED)


@pytest.fixture(scope="session")
def random_polys(rng):
    """Twenty random polynomials per degree 2..6 with square-free leading forms."""
    return {n: [random_square_free_poly(rng, n) for _ in range(20)] for n in range(2, 7)}


@pytest.fixture(scope="session")
def high_degree_polys():
    """Five random polynomials per degree 7 and 8, from their own generator."""
    gen = random.Random(RANDOM_SEED + 1)
    return {n: [random_square_free_poly(gen, n, bound=2) for _ in range(5)] for n in (7, 8)}


def to_sympy(p):
    """A Poly as a sympy expression over its own variable names."""
    import sympy
    symbols = sympy.symbols(' '.join(p.variables))
    expr = sympy.Integer(0)
    for exps, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, e in zip(symbols, exps):
            term *= s ** e
        expr += term
    return sympy.expand(expr)


@pytest.fixture(scope="session")
def sympy_of():
    """Convert polynomials to sympy expressions for oracle comparisons."""
    return to_sympy
