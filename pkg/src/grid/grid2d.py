"""
Uniform rectangular grid and grid functions on its interior nodes.

Boundary nodes carry the homogeneous Dirichlet value and are never stored.
Interior nodes are enumerated row-major over (i1, i2) with i2 fastest.
"""

from dataclasses import dataclass, field
from typing import Callable, Tuple

import numpy as np

from errors import DimensionError, DomainError


@dataclass(frozen=True)
class Grid2D:
    """Uniform grid on the rectangle (0, l1) x (0, l2) with N1 x N2 cells."""
    N1: int
    N2: int
    l1: float = 1.0
    l2: float = 1.0

    def __post_init__(self):
        for name in ('N1', 'N2'):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < 2:
                raise DomainError(f"{name} must be an integer >= 2, got {value!r}")
        for name in ('l1', 'l2'):
            value = getattr(self, name)
            if not np.isfinite(value) or value <= 0:
                raise DomainError(f"{name} must be a positive length, got {value!r}")
        object.__setattr__(self, 'N1', int(self.N1))
        object.__setattr__(self, 'N2', int(self.N2))
        object.__setattr__(self, 'l1', float(self.l1))
        object.__setattr__(self, 'l2', float(self.l2))

    @classmethod
    def unit_square(cls, N: int) -> 'Grid2D':
        return cls(N, N, 1.0, 1.0)

    @property
    def h1(self) -> float:
        return self.l1 / self.N1

    @property
    def h2(self) -> float:
        return self.l2 / self.N2

    @property
    def shape(self) -> Tuple[int, int]:
        """Interior node counts per axis, (N1-1, N2-1)."""
        return (self.N1 - 1, self.N2 - 1)

    @property
    def K(self) -> int:
        """Number of interior nodes."""
        return (self.N1 - 1) * (self.N2 - 1)

    @property
    def cell_area(self) -> float:
        return self.h1 * self.h2

    def axis_coordinates(self) -> Tuple[np.ndarray, np.ndarray]:
        """Interior coordinates x1[i1-1] = i1*h1 and x2[i2-1] = i2*h2."""
        x1 = np.arange(1, self.N1) * self.h1
        x2 = np.arange(1, self.N2) * self.h2
        return x1, x2

    def nodes(self) -> Tuple[np.ndarray, np.ndarray]:
        """
        Interior node coordinates as matrices of shape (N1-1, N2-1).

        Returns:
            (X1, X2) with X1[i1-1, i2-1] = i1*h1 and X2[i1-1, i2-1] = i2*h2
        """
        x1, x2 = self.axis_coordinates()
        return np.meshgrid(x1, x2, indexing='ij')

    def indices(self) -> Tuple[np.ndarray, np.ndarray]:
        """Flattened (i1, i2) index arrays in the declared node ordering."""
        i1, i2 = np.meshgrid(np.arange(1, self.N1), np.arange(1, self.N2), indexing='ij')
        return i1.ravel(), i2.ravel()

    def describe(self) -> str:
        return f"{self.N1}x{self.N2} grid on [0,{self.l1:g}]x[0,{self.l2:g}] (K={self.K})"


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Real field on the interior nodes of a grid; values are read-only."""
    grid: Grid2D
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64).ravel()
        if values.size != self.grid.K:
            raise DimensionError(
                f"grid function has {values.size} values, {self.grid.describe()} needs {self.grid.K}"
            )
        values.setflags(write=False)
        object.__setattr__(self, 'values', values)

    @classmethod
    def zeros(cls, grid: Grid2D) -> 'GridFunction':
        return cls(grid, np.zeros(grid.K))

    @classmethod
    def from_matrix(cls, grid: Grid2D, matrix: np.ndarray) -> 'GridFunction':
        matrix = np.asarray(matrix, dtype=np.float64)
        if matrix.shape != grid.shape:
            raise DimensionError(f"matrix shape {matrix.shape} does not match interior shape {grid.shape}")
        return cls(grid, matrix.ravel())

    @classmethod
    def from_function(cls, grid: Grid2D, func: Callable[[np.ndarray, np.ndarray], np.ndarray]) -> 'GridFunction':
        """Sample a vectorized f(x1, x2) at the interior nodes."""
        X1, X2 = grid.nodes()
        return cls.from_matrix(grid, np.broadcast_to(func(X1, X2), grid.shape))

    def as_matrix(self) -> np.ndarray:
        """Read-only (N1-1) x (N2-1) view of the values."""
        return self.values.reshape(self.grid.shape)

    def with_values(self, values: np.ndarray) -> 'GridFunction':
        return GridFunction(self.grid, values)

    def __add__(self, other: 'GridFunction') -> 'GridFunction':
        require_same_grid(self, other)
        return self.with_values(self.values + other.values)

    def __sub__(self, other: 'GridFunction') -> 'GridFunction':
        require_same_grid(self, other)
        return self.with_values(self.values - other.values)

    def __mul__(self, scalar: float) -> 'GridFunction':
        return self.with_values(self.values * float(scalar))

    __rmul__ = __mul__


def require_same_grid(*fields_or_grids) -> Grid2D:
    """
    Check that every argument lives on one grid.

    Args:
        fields_or_grids: GridFunction or Grid2D instances (or anything with .grid)

    Returns:
        The common grid

    Raises:
        DimensionError: On any mismatch
    """
    grids = [item if isinstance(item, Grid2D) else item.grid for item in fields_or_grids]
    first = grids[0]
    for other in grids[1:]:
        if other != first:
            raise DimensionError(f"{first.describe()} vs {other.describe()}")
    return first
