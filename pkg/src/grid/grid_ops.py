"""
Discrete L2(omega) inner product, norms and the model right-hand sides.
"""

import math

import numpy as np

from errors import UsageError
from .grid2d import Grid2D, GridFunction, require_same_grid


def inner_product(u: GridFunction, w: GridFunction) -> float:
    """
    Discrete scalar product (u, w) = sum over interior nodes of u*w*h1*h2.

    Raises:
        DimensionError: If u and w live on different grids
    """
    grid = require_same_grid(u, w)
    return float(np.dot(u.values, w.values)) * grid.cell_area


def norm_l2(u: GridFunction) -> float:
    return math.sqrt(max(inner_product(u, u), 0.0))


def norm_inf(u: GridFunction) -> float:
    if u.values.size == 0:
        return 0.0
    return float(np.max(np.abs(u.values)))


def rhs_f1(grid: Grid2D) -> GridFunction:
    """Smooth source x1^2 (1 - x1) x2^2 (1 - x2)."""
    def factor(t):
        return t ** 2 * (1.0 - t)

    # exactly symmetric under x1 <-> x2 on square grids
    return GridFunction.from_function(grid, lambda x1, x2: factor(x1) * factor(x2))


def rhs_f2(grid: Grid2D) -> GridFunction:
    """
    Discontinuous source 1 + sgn(x1*x2 - 0.25).

    sgn(0) = 0, so nodes on the level set x1*x2 = 0.25 get the value 1.
    """
    return GridFunction.from_function(grid, lambda x1, x2: 1.0 + np.sign(x1 * x2 - 0.25))


def rhs_zero(grid: Grid2D) -> GridFunction:
    return GridFunction.zeros(grid)


RHS_BUILDERS = {
    'f1': rhs_f1,
    'f2': rhs_f2,
    'zero': rhs_zero,
}


def rhs_by_name(name: str, grid: Grid2D) -> GridFunction:
    """
    Build a named right-hand side.

    Args:
        name: 'f1', 'f2' or 'zero'
        grid: Target grid

    Returns:
        The sampled right-hand side

    Raises:
        UsageError: For an unknown name
    """
    try:
        builder = RHS_BUILDERS[name]
    except KeyError:
        raise UsageError(f"unknown right-hand side {name!r}; expected one of {', '.join(RHS_BUILDERS)}")
    return builder(grid)
