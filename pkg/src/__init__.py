"""
fracpow
Fractional powers of a 2-D finite-difference elliptic operator, solved via
semigroup snapshots and generalized Gauss-Laguerre quadrature.
"""

__version__ = '1.0.0'
