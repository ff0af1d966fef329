"""
Generalized Gauss-Laguerre quadrature and the scalar kernel integral.
"""

from .laguerre import (
    LaguerreRule, build_rule, jacobi_matrix, s_exact, s_quad,
    kappa_samples, quad_error_study, quad_error_table,
    KAPPA_MIN, KAPPA_MAX, KAPPA_COUNT
)

__all__ = [
    'LaguerreRule', 'build_rule', 'jacobi_matrix', 's_exact', 's_quad',
    'kappa_samples', 'quad_error_study', 'quad_error_table',
    'KAPPA_MIN', 'KAPPA_MAX', 'KAPPA_COUNT',
]
