"""
fracops - fractional calculus engine

Exact Riemann-Liouville, Caputo and Liouville-Weyl operators on power sums,
grid-based numeric operators, Laplace rules and verification suites.
"""

__version__ = "1.0.0"
