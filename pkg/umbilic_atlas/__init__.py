"""
umbilic_atlas: umbilic points of graphs of real polynomials in two
variables, in the plane and at infinity on the Poincare sphere.
"""

__version__ = '0.1.0'
