"""
Spectral decomposition of the grid operator.
"""

from .basis import (
    SpectralBasis, SpectralCoefficients,
    analytic_eigenpairs, dense_eigenpairs, basis_for,
    forward, inverse, apply_semigroup, exact_fractional_inverse,
    MODE_ANALYTIC, MODE_DENSE
)

__all__ = [
    'SpectralBasis', 'SpectralCoefficients',
    'analytic_eigenpairs', 'dense_eigenpairs', 'basis_for',
    'forward', 'inverse', 'apply_semigroup', 'exact_fractional_inverse',
    'MODE_ANALYTIC', 'MODE_DENSE',
]
