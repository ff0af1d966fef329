"""
Five-point finite-difference elliptic operator

    A u = -div(a grad u) + c u

on the interior nodes of a uniform grid with homogeneous Dirichlet
boundary conditions.

The diffusion coefficient is sampled once on every cell edge midpoint and
shared by the two nodes of that edge, so the assembled matrix is exactly
symmetric.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
import scipy.sparse as sp

from errors import CapacityError, DomainError, check_shift
from grid import Grid2D, GridFunction, require_same_grid

logger = logging.getLogger(__name__)

DEFAULT_DENSE_CAP = 4096

CoefficientFunction = Callable[[np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class CoefficientField:
    """
    Coefficients a(x) > 0 and c(x) >= 0 of the elliptic operator.

    Functions must accept coordinate arrays and return arrays of the same
    shape (scalars are broadcast).
    """
    a: CoefficientFunction
    c: CoefficientFunction
    a0: Optional[float] = None  # set for constant coefficients
    c0: Optional[float] = None

    @classmethod
    def constant(cls, a0: float = 1.0, c0: float = 0.0) -> 'CoefficientField':
        a0 = float(a0)
        c0 = float(c0)
        if not a0 > 0:
            raise DomainError(f"diffusion coefficient must be positive, got {a0}")
        if not c0 >= 0:
            raise DomainError(f"reaction coefficient must be nonnegative, got {c0}")
        return cls(a=lambda x1, x2: np.full(np.shape(x1), a0),
                   c=lambda x1, x2: np.full(np.shape(x1), c0),
                   a0=a0, c0=c0)

    @property
    def is_constant(self) -> bool:
        return self.a0 is not None and self.c0 is not None


class EllipticOperator:
    """
    Matrix-free 5-point operator with variable coefficients.

    Edge coefficients are evaluated and validated at construction; the
    sparse matrix is built lazily and cached.
    """

    def __init__(self, grid: Grid2D, coeffs: Optional[CoefficientField] = None):
        self.grid = grid
        self.coeffs = coeffs if coeffs is not None else CoefficientField.constant()
        self._sparse: Optional[sp.csr_matrix] = None

        n1, n2 = grid.shape
        x1, x2 = grid.axis_coordinates()

        # ax[j, i2]: a at ((j + 1/2) h1, x2), j = 0..N1-1 (edges along x1)
        edge_x1 = (np.arange(grid.N1) + 0.5) * grid.h1
        ex1, ex2 = np.meshgrid(edge_x1, x2, indexing='ij')
        self._ax = self._sample(self.coeffs.a, ex1, ex2, (grid.N1, n2))

        # ay[i1, j]: a at (x1, (j + 1/2) h2), j = 0..N2-1 (edges along x2)
        edge_x2 = (np.arange(grid.N2) + 0.5) * grid.h2
        ey1, ey2 = np.meshgrid(x1, edge_x2, indexing='ij')
        self._ay = self._sample(self.coeffs.a, ey1, ey2, (n1, grid.N2))

        X1, X2 = grid.nodes()
        self._c = self._sample(self.coeffs.c, X1, X2, (n1, n2))

        if not np.all(self._ax > 0) or not np.all(self._ay > 0):
            raise DomainError("diffusion coefficient a(x) must be positive at every edge midpoint")
        if not np.all(self._c >= 0):
            raise DomainError("reaction coefficient c(x) must be nonnegative at every node")

        for array in (self._ax, self._ay, self._c):
            array.setflags(write=False)

        logger.debug(f"Operator on {grid.describe()}: a in [{min(self._ax.min(), self._ay.min()):.3g}, "
                     f"{max(self._ax.max(), self._ay.max()):.3g}], c in [{self._c.min():.3g}, {self._c.max():.3g}]")

    @staticmethod
    def _sample(func: CoefficientFunction, X1: np.ndarray, X2: np.ndarray, shape) -> np.ndarray:
        values = np.array(np.broadcast_to(func(X1, X2), shape), dtype=np.float64)
        if not np.all(np.isfinite(values)):
            raise DomainError("coefficient function returned non-finite values")
        return values

    @property
    def diagonal(self) -> np.ndarray:
        """Stencil centre coefficient per interior node, flattened."""
        h1sq = self.grid.h1 ** 2
        h2sq = self.grid.h2 ** 2
        centre = ((self._ax[:-1, :] + self._ax[1:, :]) / h1sq
                  + (self._ay[:, :-1] + self._ay[:, 1:]) / h2sq
                  + self._c)
        return centre.ravel()

    def apply(self, u: GridFunction) -> GridFunction:
        """
        Apply the 5-point stencil; neighbours outside omega are zero.

        Raises:
            DimensionError: If u is on another grid
        """
        require_same_grid(self.grid, u)
        U = u.as_matrix()
        h1sq = self.grid.h1 ** 2
        h2sq = self.grid.h2 ** 2

        padded = np.zeros((U.shape[0] + 2, U.shape[1] + 2))
        padded[1:-1, 1:-1] = U
        # Fluxes across every edge (including the boundary ones)
        flux1 = self._ax * (padded[1:, 1:-1] - padded[:-1, 1:-1])
        flux2 = self._ay * (padded[1:-1, 1:] - padded[1:-1, :-1])

        AU = (-(flux1[1:, :] - flux1[:-1, :]) / h1sq
              - (flux2[:, 1:] - flux2[:, :-1]) / h2sq
              + self._c * U)
        return GridFunction.from_matrix(self.grid, AU)

    def __call__(self, u: GridFunction) -> GridFunction:
        return self.apply(u)

    def apply_power(self, u: GridFunction, p: int) -> GridFunction:
        """
        Apply the operator p times; p = 0 returns u unchanged.

        Raises:
            DomainError: If p is negative or not an integer
        """
        result = u
        for _ in range(check_shift(p)):
            result = self.apply(result)
        return result

    def sparse_matrix(self) -> sp.csr_matrix:
        """Cached CSR matrix of the stencil in the declared node ordering."""
        if self._sparse is None:
            self._sparse = self._assemble_sparse()
        return self._sparse

    def _assemble_sparse(self) -> sp.csr_matrix:
        n1, n2 = self.grid.shape
        h1sq = self.grid.h1 ** 2
        h2sq = self.grid.h2 ** 2
        index = np.arange(self.grid.K).reshape(n1, n2)

        rows = [index.ravel()]
        cols = [index.ravel()]
        vals = [self.diagonal]

        # Interior edges along x1 couple (i1, i2) and (i1 + 1, i2)
        if n1 > 1:
            weight = -(self._ax[1:-1, :] / h1sq).ravel()
            left = index[:-1, :].ravel()
            right = index[1:, :].ravel()
            rows += [left, right]
            cols += [right, left]
            vals += [weight, weight]

        # Interior edges along x2 couple (i1, i2) and (i1, i2 + 1)
        if n2 > 1:
            weight = -(self._ay[:, 1:-1] / h2sq).ravel()
            lower = index[:, :-1].ravel()
            upper = index[:, 1:].ravel()
            rows += [lower, upper]
            cols += [upper, lower]
            vals += [weight, weight]

        matrix = sp.coo_matrix(
            (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
            shape=(self.grid.K, self.grid.K),
        )
        return matrix.tocsr()

    def assemble_dense(self, cap: int = DEFAULT_DENSE_CAP) -> np.ndarray:
        """
        Dense symmetric K x K matrix of the operator.

        Args:
            cap: Largest K accepted

        Raises:
            CapacityError: If K exceeds cap
        """
        if self.grid.K > cap:
            raise CapacityError(f"dense assembly needs K={self.grid.K} <= dense cap {cap}")
        return self.sparse_matrix().toarray()


def truncation_error(op: EllipticOperator,
                     exact: CoefficientFunction,
                     continuous_image: CoefficientFunction) -> float:
    """
    Max-norm consistency error |A u_h - (Lu)_h| for a smooth u vanishing on the boundary.

    Args:
        op: Grid operator
        exact: u(x1, x2)
        continuous_image: (-div(a grad u) + c u)(x1, x2)

    Returns:
        Maximum absolute defect over interior nodes
    """
    u_h = GridFunction.from_function(op.grid, exact)
    target = GridFunction.from_function(op.grid, continuous_image)
    return float(np.max(np.abs(op.apply(u_h).values - target.values)))
