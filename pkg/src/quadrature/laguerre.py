"""
Generalized Gauss-Laguerre quadrature for the weight xi^(beta-1) exp(-xi)
on (0, inf), and the scalar kernel integral

    S(beta, kappa) = int_0^inf xi^(beta-1) exp(-xi) exp(-kappa xi) d xi
                   = Gamma(beta) (1 + kappa)^(-beta).

Nodes and weights come from the symmetric Jacobi matrix of the monic
Laguerre recurrence (Golub-Welsch): nodes are its eigenvalues, weights are
Gamma(beta) times the squared first components of the normalized
eigenvectors.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, Optional, Tuple

import numpy as np
import scipy.linalg
import scipy.special

from errors import DomainError, NumericError, check_alpha, check_shift, check_positive_int, check_positive

logger = logging.getLogger(__name__)

# Newton polish stopping rule
POLISH_TOLERANCE = 1e-13
POLISH_MAX_ITERATIONS = 10

# Default kappa sampling for the error functional
KAPPA_MIN = 1.0
KAPPA_MAX = 1e5
KAPPA_COUNT = 2000


@dataclass(frozen=True, eq=False)
class LaguerreRule:
    """m-point Gauss rule for the weight xi^(beta-1) exp(-xi)."""
    m: int
    beta: float
    xi: np.ndarray = field(repr=False)
    sigma: np.ndarray = field(repr=False)

    def __post_init__(self):
        for name in ('xi', 'sigma'):
            values = np.array(getattr(self, name), dtype=np.float64)
            values.setflags(write=False)
            object.__setattr__(self, name, values)

    @property
    def log_sigma(self) -> np.ndarray:
        with np.errstate(divide='ignore'):
            return np.log(self.sigma)

    def integrate(self, func) -> float:
        """sum_i sigma_i f(xi_i) for a vectorized f."""
        return float(np.dot(self.sigma, func(self.xi)))

    def moment(self, j: int) -> float:
        return self.integrate(lambda x: x ** j)


def jacobi_matrix(m: int, beta: float) -> Tuple[np.ndarray, np.ndarray]:
    """
    Diagonal and off-diagonal of the Jacobi matrix for L_m^(beta-1).

    Returns:
        (diagonal 2j + beta for j = 0..m-1, off-diagonal sqrt(j (j + beta - 1)) for j = 1..m-1)
    """
    j = np.arange(m, dtype=np.float64)
    diagonal = 2.0 * j + beta
    off = np.sqrt(j[1:] * (j[1:] + beta - 1.0))
    return diagonal, off


def _polish_nodes(m: int, beta: float, xi: np.ndarray) -> np.ndarray:
    """Newton iteration on L_m^(beta-1) using d/dx L_m^(a) = -L_(m-1)^(a+1)."""
    a = beta - 1.0
    polished = xi.copy()
    for i, x in enumerate(xi):
        for _ in range(POLISH_MAX_ITERATIONS):
            value = scipy.special.eval_genlaguerre(m, a, x)
            slope = -scipy.special.eval_genlaguerre(m - 1, a + 1.0, x)
            step = value / slope if slope != 0 else np.nan
            if not np.isfinite(step):
                break
            x = x - step
            if abs(step) <= POLISH_TOLERANCE * abs(x):
                break
        if np.isfinite(x) and x > 0:
            polished[i] = x
    return polished


def build_rule(m: int, beta: float, polish: bool = False) -> LaguerreRule:
    """
    Build the m-point generalized Gauss-Laguerre rule.

    Args:
        m: Number of nodes (>= 1)
        beta: Weight exponent plus one (> 0); beta = alpha + p in solver usage
        polish: Refine nodes by Newton iteration on the Laguerre polynomial

    Returns:
        LaguerreRule with ascending positive nodes and positive weights

    Raises:
        DomainError: If m or beta is invalid
        NumericError: If the tridiagonal eigensolve fails
    """
    m = check_positive_int(m, "m")
    beta = check_positive(beta, "beta")
    total_mass = scipy.special.gamma(beta)

    if m == 1:
        # L_1^(beta-1)(xi) = beta - xi
        return LaguerreRule(1, beta, np.array([beta]), np.array([total_mass]))

    diagonal, off = jacobi_matrix(m, beta)
    try:
        xi, vectors = scipy.linalg.eigh_tridiagonal(diagonal, off)
    except (np.linalg.LinAlgError, ValueError) as e:
        raise NumericError(f"Jacobi eigensolve failed for m={m}, beta={beta}: {e}") from e

    sigma = total_mass * vectors[0, :] ** 2

    if polish:
        xi = _polish_nodes(m, beta, xi)

    if not (np.all(xi > 0) and np.all(np.diff(xi) > 0)):
        raise NumericError(f"nodes for m={m}, beta={beta} are not strictly increasing and positive")
    if not np.all(sigma > 0):
        # tiny weights of the largest nodes may underflow for very large m
        logger.debug(f"m={m}, beta={beta}: {int(np.sum(sigma <= 0))} weights underflowed")

    return LaguerreRule(m, beta, xi, sigma)


def s_exact(beta: float, kappa):
    """
    Closed form S(beta, kappa) = Gamma(beta) (1 + kappa)^(-beta).

    Args:
        beta: > 0
        kappa: scalar or array, >= 0

    Raises:
        DomainError: For beta <= 0 or negative kappa
    """
    beta = check_positive(beta, "beta")
    kappa_values = np.asarray(kappa, dtype=np.float64)
    if np.any(~(kappa_values >= 0)):
        raise DomainError("kappa must be nonnegative")
    result = scipy.special.gamma(beta) * (1.0 + kappa_values) ** (-beta)
    return float(result) if result.ndim == 0 else result


def s_quad(rule: LaguerreRule, kappa):
    """
    Quadrature value S_m(beta, kappa) = sum_i sigma_i exp(-kappa xi_i).

    Args:
        rule: Gauss-Laguerre rule
        kappa: scalar or array, >= 0
    """
    kappa_values = np.asarray(kappa, dtype=np.float64)
    if np.any(~(kappa_values >= 0)):
        raise DomainError("kappa must be nonnegative")
    kernel = np.exp(-np.multiply.outer(kappa_values, rule.xi))
    result = kernel @ rule.sigma
    return float(result) if result.ndim == 0 else result


def kappa_samples(kappa_min: float = KAPPA_MIN, kappa_max: float = KAPPA_MAX,
                  count: int = KAPPA_COUNT, include_zero: bool = False) -> np.ndarray:
    """
    `count` log-spaced points in [kappa_min, kappa_max], preceded by 0 when
    include_zero is set.
    """
    kappa_min = check_positive(kappa_min, "kappa_min")
    kappa_max = check_positive(kappa_max, "kappa_max")
    count = check_positive_int(count, "kappa count")
    if kappa_max < kappa_min:
        raise DomainError(f"kappa_max {kappa_max} is below kappa_min {kappa_min}")
    samples = np.logspace(math.log10(kappa_min), math.log10(kappa_max), count)
    return np.concatenate(([0.0], samples)) if include_zero else samples


def quad_error_study(m: int, alpha: float, p: int,
                     kappa: Optional[np.ndarray] = None,
                     polish: bool = False) -> float:
    """
    Relative quadrature error over a kappa sample set:

        eps = max |S - S_m| / q,  q = max S over the same samples.

    S is decreasing in kappa, so q is S at the smallest sample: S(beta, 1) =
    Gamma(beta) 2^-beta for the default set, Gamma(beta) when 0 is included.

    Args:
        m: Number of nodes
        alpha: Fractional exponent in (0, 1)
        p: Nonnegative integer shift
        kappa: Sample set (defaults to kappa_samples())
        polish: Newton polish of nodes

    Returns:
        eps
    """
    alpha = check_alpha(alpha)
    p = check_shift(p)
    samples = kappa_samples() if kappa is None else np.asarray(kappa, dtype=np.float64)

    beta = alpha + p
    rule = build_rule(m, beta, polish=polish)
    exact = s_exact(beta, samples)
    approx = s_quad(rule, samples)
    q = float(np.max(exact))
    if not q > 0:
        raise DomainError("kappa sample set has no point where S is positive")
    return float(np.max(np.abs(np.atleast_1d(exact - approx))) / q)


def quad_error_table(ms: Iterable[int], ps: Iterable[int], alphas: Iterable[float],
                     kappa: Optional[np.ndarray] = None,
                     polish: bool = False) -> Dict[Tuple[int, int, float], float]:
    """eps for every (m, p, alpha) combination, sharing one kappa sample set."""
    samples = kappa_samples() if kappa is None else np.asarray(kappa, dtype=np.float64)
    return {
        (m, p, alpha): quad_error_study(m, alpha, p, samples, polish)
        for m in ms for p in ps for alpha in alphas
    }
