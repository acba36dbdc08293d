"""Exact calculus of complex differential forms and ddbar conditions on Hermitian metrics.

Dolbeault operators, contractions by vector-valued forms, deformation jets
and blow-up expansions over Gaussian-rational polynomial coefficients.
"""

__version__ = "0.1.0"
