from polynomials.calculus import homogeneous_decompose, partial
from polynomials.factors import LinearFactor, LinearFactorization, real_linear_factors
from polynomials.models import BiPoly, ChartPoly, Poly, Residue, TriPoly
from polynomials.parser import format_poly, parse_poly
from polynomials.resultants import resultant
from polynomials.roots import RootInterval, isolate_real_roots

__all__ = [
    'BiPoly', 'ChartPoly', 'LinearFactor', 'LinearFactorization', 'Poly', 'Residue',
    'RootInterval', 'TriPoly', 'format_poly', 'homogeneous_decompose',
    'isolate_real_roots', 'parse_poly', 'partial', 'real_linear_factors', 'resultant',
]
