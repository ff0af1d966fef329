"""
Fractional-power solver built on semigroup snapshots and Gauss-Laguerre quadrature.
"""

from .solver import (
    SolverConfig, QuadratureMapping, SolveReport,
    build_mapping, kappa_of, solve_spectral, solve_snapshot,
    solution_report, relative_errors,
    PATH_SPECTRAL, PATH_SNAPSHOT
)

__all__ = [
    'SolverConfig', 'QuadratureMapping', 'SolveReport',
    'build_mapping', 'kappa_of', 'solve_spectral', 'solve_snapshot',
    'solution_report', 'relative_errors',
    'PATH_SPECTRAL', 'PATH_SNAPSHOT',
]
