"""
Eigenpairs of the grid operator and functions of the operator applied
through the spectral expansion

    g(A) u = sum_k g(mu_k) (u, psi_k) psi_k .

Two bases are available:

- analytic-sine: constant coefficients, psi_k products of discrete sines,
  transforms as two dense per-axis matrix products (O(N^3) total);
- dense-eigen: any coefficients, full symmetric eigendecomposition of the
  assembled matrix, limited by the dense cap.

Eigenvalues are sorted ascending; ties keep (k1, k2) lexicographic order.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np
import scipy.linalg

from errors import DomainError, NumericError, DimensionError, check_alpha, check_shift
from grid import Grid2D, GridFunction, require_same_grid
from operators import EllipticOperator, DEFAULT_DENSE_CAP

logger = logging.getLogger(__name__)

MODE_ANALYTIC = "analytic-sine"
MODE_DENSE = "dense-eigen"


def _sine_matrix(N: int, length: float) -> np.ndarray:
    """S[i-1, k-1] = sqrt(2/l) sin(pi i k / N), i, k = 1..N-1."""
    idx = np.arange(1, N)
    return math.sqrt(2.0 / length) * np.sin(np.pi * np.outer(idx, idx) / N)


def _axis_eigenvalues(N: int, h: float) -> np.ndarray:
    k = np.arange(1, N)
    return 4.0 / h ** 2 * np.sin(k * np.pi / (2 * N)) ** 2


class SpectralBasis:
    """
    Orthonormal (in the discrete inner product) eigenbasis of the operator.

    Do not construct directly; use analytic_eigenpairs or dense_eigenpairs.
    """

    def __init__(self, grid: Grid2D, mode: str, eigenvalues: np.ndarray,
                 order: Optional[np.ndarray] = None,
                 axis_transforms: Optional[Tuple[np.ndarray, np.ndarray]] = None,
                 vectors: Optional[np.ndarray] = None):
        self.grid = grid
        self.mode = mode
        self.eigenvalues = np.asarray(eigenvalues, dtype=np.float64)
        self._order = order
        self._axis_transforms = axis_transforms
        self._vectors = vectors

        self.eigenvalues.setflags(write=False)
        if self.eigenvalues.size != grid.K:
            raise DimensionError(f"{self.eigenvalues.size} eigenvalues for K={grid.K}")
        if not self.eigenvalues[0] > 0:
            raise NumericError(f"operator is not positive definite: mu_1 = {self.eigenvalues[0]:.6g}")

    @property
    def K(self) -> int:
        return self.grid.K

    @property
    def mu_min(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def mu_max(self) -> float:
        return float(self.eigenvalues[-1])

    def mode_index(self, k: int) -> Tuple[int, int]:
        """(k1, k2), 1-based, of the k-th sorted eigenvalue (analytic basis only)."""
        if self.mode != MODE_ANALYTIC:
            raise DomainError("mode indices exist only for the analytic-sine basis")
        lex = int(self._order[k])
        n2 = self.grid.N2 - 1
        return lex // n2 + 1, lex % n2 + 1

    def eigenvector(self, k: int) -> GridFunction:
        """psi_k for the k-th (0-based) sorted eigenvalue."""
        if self.mode == MODE_ANALYTIC:
            k1, k2 = self.mode_index(k)
            S1, S2 = self._axis_transforms
            return GridFunction.from_matrix(self.grid, np.outer(S1[:, k1 - 1], S2[:, k2 - 1]))
        return GridFunction(self.grid, self._vectors[:, k] / math.sqrt(self.grid.cell_area))

    def forward(self, u: GridFunction) -> 'SpectralCoefficients':
        """Coefficients (u, psi_k) in sorted eigenvalue order."""
        require_same_grid(self.grid, u)
        if self.mode == MODE_ANALYTIC:
            S1, S2 = self._axis_transforms
            C = self.grid.cell_area * (S1.T @ u.as_matrix() @ S2)
            coefficients = C.ravel()[self._order]
        else:
            coefficients = math.sqrt(self.grid.cell_area) * (self._vectors.T @ u.values)
        return SpectralCoefficients(self, coefficients)

    def inverse(self, coeffs: 'SpectralCoefficients') -> GridFunction:
        """Field sum_k coeff_k psi_k."""
        if coeffs.basis is not self:
            raise DimensionError("coefficients belong to another basis")
        values = coeffs.coefficients
        if values.size != self.K:
            raise DimensionError(f"{values.size} coefficients for K={self.K}")

        if self.mode == MODE_ANALYTIC:
            S1, S2 = self._axis_transforms
            lex = np.empty(self.K)
            lex[self._order] = values
            U = S1 @ lex.reshape(self.grid.shape) @ S2.T
            return GridFunction.from_matrix(self.grid, U)
        return GridFunction(self.grid, (self._vectors @ values) / math.sqrt(self.grid.cell_area))

    def apply_multiplier(self, u: GridFunction, multiplier: np.ndarray) -> GridFunction:
        """
        g(A) u for per-mode multipliers g(mu_k) given in sorted order.
        """
        coeffs = self.forward(u)
        return self.inverse(coeffs.scaled(multiplier))

    def apply_function(self, u: GridFunction, func: Callable[[np.ndarray], np.ndarray]) -> GridFunction:
        """g(A) u for a vectorized g of the eigenvalues."""
        return self.apply_multiplier(u, func(self.eigenvalues))

    def apply_semigroup(self, u: GridFunction, t: float) -> GridFunction:
        """
        exp(-t A) u, the exact solution at time t of dw/dt + A w = 0, w(0) = u.

        Raises:
            DomainError: If t is negative
        """
        if not t >= 0:
            raise DomainError(f"semigroup time must be nonnegative, got {t}")
        return self.apply_function(u, lambda mu: np.exp(-mu * t))

    def apply_power(self, u: GridFunction, p: int) -> GridFunction:
        """A^p u in coefficient space."""
        return self.apply_multiplier(u, self.eigenvalues ** check_shift(p))

    def exact_fractional_inverse(self, b: GridFunction, alpha: float) -> GridFunction:
        """
        Reference solution u = A^(-alpha) b.

        Raises:
            DomainError: If alpha is not in (0, 1)
        """
        check_alpha(alpha)
        return self.apply_function(b, lambda mu: mu ** (-alpha))


@dataclass(frozen=True, eq=False)
class SpectralCoefficients:
    """Expansion coefficients (u, psi_k) in sorted eigenvalue order."""
    basis: SpectralBasis
    coefficients: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.array(self.coefficients, dtype=np.float64).ravel()
        values.setflags(write=False)
        object.__setattr__(self, 'coefficients', values)

    def scaled(self, multiplier: np.ndarray) -> 'SpectralCoefficients':
        return SpectralCoefficients(self.basis, self.coefficients * np.asarray(multiplier, dtype=np.float64))

    def energy(self) -> float:
        """sum_k coeff_k^2 (equals ||u||^2 by Parseval)."""
        return float(np.dot(self.coefficients, self.coefficients))


def analytic_eigenpairs(grid: Grid2D, a0: float = 1.0, c0: float = 0.0) -> SpectralBasis:
    """
    Closed-form eigenpairs for constant coefficients a0 > 0, c0 >= 0.

    mu(k1, k2) = a0 * sum_n 4/h_n^2 sin^2(k_n pi / (2 N_n)) + c0,
    psi(k1, k2)(x) = prod_n sqrt(2/l_n) sin(k_n pi x_n / l_n).
    """
    if not a0 > 0 or not c0 >= 0:
        raise DomainError(f"constant coefficients need a0 > 0 and c0 >= 0, got a0={a0}, c0={c0}")

    lam1 = _axis_eigenvalues(grid.N1, grid.h1)
    lam2 = _axis_eigenvalues(grid.N2, grid.h2)
    lex_values = (a0 * (lam1[:, None] + lam2[None, :]) + c0).ravel()
    order = np.argsort(lex_values, kind='stable')
    order.setflags(write=False)

    transforms = (_sine_matrix(grid.N1, grid.l1), _sine_matrix(grid.N2, grid.l2))
    for matrix in transforms:
        matrix.setflags(write=False)

    logger.debug(f"Analytic basis on {grid.describe()}: mu in [{lex_values[order[0]]:.6g}, {lex_values[order[-1]]:.6g}]")
    return SpectralBasis(grid, MODE_ANALYTIC, lex_values[order], order=order, axis_transforms=transforms)


def dense_eigenpairs(op: EllipticOperator, cap: int = DEFAULT_DENSE_CAP) -> SpectralBasis:
    """
    Full symmetric eigendecomposition of the assembled operator.

    Raises:
        CapacityError: If K exceeds cap
        NumericError: If the eigensolver fails
    """
    matrix = op.assemble_dense(cap)
    try:
        eigenvalues, vectors = scipy.linalg.eigh(matrix)
    except (np.linalg.LinAlgError, ValueError) as e:
        raise NumericError(f"dense eigensolve failed on {op.grid.describe()}: {e}") from e

    vectors.setflags(write=False)
    logger.debug(f"Dense basis on {op.grid.describe()}: mu in [{eigenvalues[0]:.6g}, {eigenvalues[-1]:.6g}]")
    return SpectralBasis(op.grid, MODE_DENSE, eigenvalues, vectors=vectors)


def basis_for(op: EllipticOperator, mode: str = "auto", cap: int = DEFAULT_DENSE_CAP) -> SpectralBasis:
    """
    Pick the eigenbasis for an operator.

    Args:
        op: Grid operator
        mode: 'auto', 'analytic' or 'dense'; auto uses the analytic basis
              whenever the coefficients are constant
        cap: Dense cap

    Raises:
        DomainError: analytic mode requested for variable coefficients
    """
    match mode:
        case "auto":
            if op.coeffs.is_constant:
                return analytic_eigenpairs(op.grid, op.coeffs.a0, op.coeffs.c0)
            return dense_eigenpairs(op, cap)
        case "analytic":
            if not op.coeffs.is_constant:
                raise DomainError("the analytic-sine basis requires constant coefficients")
            return analytic_eigenpairs(op.grid, op.coeffs.a0, op.coeffs.c0)
        case "dense":
            return dense_eigenpairs(op, cap)
        case _:
            raise DomainError(f"unknown basis mode {mode!r}")


# Function-style API

def forward(basis: SpectralBasis, u: GridFunction) -> SpectralCoefficients:
    return basis.forward(u)


def inverse(basis: SpectralBasis, coeffs: SpectralCoefficients) -> GridFunction:
    return basis.inverse(coeffs)


def apply_semigroup(basis: SpectralBasis, u: GridFunction, t: float) -> GridFunction:
    return basis.apply_semigroup(u, t)


def exact_fractional_inverse(basis: SpectralBasis, b: GridFunction, alpha: float) -> GridFunction:
    return basis.exact_fractional_inverse(b, alpha)
