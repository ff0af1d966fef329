"""
Grid geometry and grid functions.
"""

from .grid2d import Grid2D, GridFunction, require_same_grid
from .grid_ops import (
    inner_product, norm_l2, norm_inf,
    rhs_f1, rhs_f2, rhs_zero, rhs_by_name, RHS_BUILDERS
)

__all__ = [
    'Grid2D', 'GridFunction', 'require_same_grid',
    'inner_product', 'norm_l2', 'norm_inf',
    'rhs_f1', 'rhs_f2', 'rhs_zero', 'rhs_by_name', 'RHS_BUILDERS',
]
