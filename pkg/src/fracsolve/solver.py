"""
Approximate solution of u = A^(-alpha) b from solutions of the parabolic
problem dw/dt + A w = 0, w(0) = A^p b:

    u = 1/Gamma(alpha + p) int_0^inf theta^(alpha+p-1) w(theta) d theta
      ~ u_m = sum_i gamma_i w(theta_i).

With xi = delta * theta the integral carries the generalized Laguerre weight
xi^(alpha+p-1) exp(-xi); the rule's nodes and weights give

    theta_i = xi_i / delta,
    gamma_i = sigma_i exp(xi_i) / (delta^(alpha+p) Gamma(alpha+p)).

Per mode the residual kernel is exp(-kappa_k xi), kappa_k = mu_k/delta - 1.
"""

import functools
import logging
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Tuple

import numpy as np
import scipy.special

from errors import (
    DomainError, NormalizationError, check_alpha, check_shift, check_positive_int
)
from grid import GridFunction, norm_l2, norm_inf, require_same_grid
from operators import EllipticOperator
from quadrature import LaguerreRule, build_rule, s_quad
from spectral import SpectralBasis

logger = logging.getLogger(__name__)

PATH_SPECTRAL = "spectral"
PATH_SNAPSHOT = "snapshot"

Propagator = Callable[[GridFunction, float], GridFunction]


@dataclass(frozen=True, eq=False)
class SolverConfig:
    """
    Parameters of one approximate solve.

    delta defaults to the smallest eigenvalue mu_1 of the basis; a smaller
    positive value emulates a known lower bound only. When `operator` is
    given, the snapshot path forms A^p b with the stencil instead of the
    spectral expansion.
    """
    alpha: float
    p: int
    m: int
    basis: SpectralBasis = field(repr=False)
    delta: Optional[float] = None
    operator: Optional[EllipticOperator] = field(default=None, repr=False)
    polish: bool = False

    def __post_init__(self):
        check_alpha(self.alpha)
        check_shift(self.p)
        check_positive_int(self.m, "m")
        delta = self.basis.mu_min if self.delta is None else float(self.delta)
        _check_delta(self.basis, delta)
        object.__setattr__(self, 'delta', delta)
        if self.operator is not None:
            require_same_grid(self.basis.grid, self.operator.grid)

    @property
    def beta(self) -> float:
        return self.alpha + self.p

    def rule(self) -> LaguerreRule:
        return _cached_rule(self.m, self.beta, self.polish)


@dataclass(frozen=True, eq=False)
class QuadratureMapping:
    """Semigroup evaluation times theta_i and solution weights gamma_i."""
    theta: np.ndarray
    log_gamma: np.ndarray  # log gamma_i, finite even when gamma_i overflows

    @property
    def gamma(self) -> np.ndarray:
        with np.errstate(over='ignore'):
            return np.exp(self.log_gamma)

    @property
    def m(self) -> int:
        return self.theta.size


RULE_CACHE_SIZE = 256


@functools.lru_cache(maxsize=RULE_CACHE_SIZE)
def _cached_rule(m: int, beta: float, polish: bool) -> LaguerreRule:
    return build_rule(m, beta, polish=polish)


def _check_delta(basis: SpectralBasis, delta: float):
    if not (math.isfinite(delta) and delta > 0):
        raise DomainError(f"delta must be positive, got {delta}")
    if delta > basis.mu_min:
        raise DomainError(f"delta={delta:.17g} exceeds the smallest eigenvalue mu_1={basis.mu_min:.17g}")


def build_mapping(rule: LaguerreRule, delta: float, alpha: float, p: int) -> QuadratureMapping:
    """
    theta_i = xi_i / delta and gamma_i = sigma_i e^(xi_i) / (delta^beta Gamma(beta)),
    the latter kept in log space.
    """
    beta = alpha + p
    log_gamma = rule.log_sigma + rule.xi - beta * math.log(delta) - scipy.special.gammaln(beta)
    return QuadratureMapping(theta=rule.xi / delta, log_gamma=log_gamma)


def kappa_of(basis: SpectralBasis, delta: float) -> np.ndarray:
    """
    kappa_k = mu_k / delta - 1 in sorted eigenvalue order.

    Raises:
        DomainError: If delta is not in (0, mu_1]
    """
    _check_delta(basis, delta)
    return basis.eigenvalues / delta - 1.0


def _solution_multiplier(config: SolverConfig) -> np.ndarray:
    """Per-mode factor mu_k^p S_m(beta, kappa_k) / (delta^beta Gamma(beta))."""
    basis = config.basis
    kappa = kappa_of(basis, config.delta)
    quadrature = s_quad(config.rule(), kappa)
    scale = 1.0 / (config.delta ** config.beta * scipy.special.gamma(config.beta))
    return basis.eigenvalues ** config.p * quadrature * scale


def solve_spectral(config: SolverConfig, b: GridFunction) -> GridFunction:
    """
    u_m evaluated in coefficient space:

        (u_m, psi_k) = (b, psi_k) mu_k^p S_m(alpha+p, kappa_k) / (delta^(alpha+p) Gamma(alpha+p)).
    """
    require_same_grid(config.basis.grid, b)
    return config.basis.apply_multiplier(b, _solution_multiplier(config))


def solve_snapshot(config: SolverConfig, b: GridFunction,
                   propagator: Optional[Propagator] = None) -> GridFunction:
    """
    u_m = sum_i gamma_i w(theta_i), accumulated snapshot by snapshot.

    Args:
        config: Solver parameters
        b: Right-hand side
        propagator: Black-box w(0) -> w(t); when omitted the exact spectral
            semigroup is used with gamma_i and exp(-mu_k theta_i) fused into
            exp(-kappa_k xi_i) per mode, so exp(xi_i) is never formed alone

    Returns:
        The approximate solution
    """
    basis = config.basis
    require_same_grid(basis.grid, b)
    rule = config.rule()
    mapping = build_mapping(rule, config.delta, config.alpha, config.p)

    if config.operator is not None:
        initial = config.operator.apply_power(b, config.p)
    else:
        initial = basis.apply_power(b, config.p)

    total = np.zeros(basis.K)
    if propagator is None:
        initial_coeffs = basis.forward(initial)
        kappa = kappa_of(basis, config.delta)
        scale = 1.0 / (config.delta ** config.beta * scipy.special.gamma(config.beta))
        for i in range(mapping.m):
            fused = rule.sigma[i] * scale * np.exp(-kappa * rule.xi[i])
            total += basis.inverse(initial_coeffs.scaled(fused)).values
    else:
        gamma = mapping.gamma
        for i in range(mapping.m):
            snapshot = propagator(initial, float(mapping.theta[i]))
            require_same_grid(basis.grid, snapshot)
            total += gamma[i] * snapshot.values

    return GridFunction(basis.grid, total)


@dataclass(eq=False)
class SolveReport:
    """Approximate and reference solutions of one run, with errors and metadata."""
    alpha: float
    p: int
    m: int
    N1: int
    N2: int
    l1: float
    l2: float
    delta: float
    eps2: float
    epsinf: float
    rel_l2: float
    max_u: float
    runtime_ms: float
    basis_mode: str
    path: str
    rhs: Optional[str] = None
    approx: Optional[GridFunction] = field(default=None, repr=False)
    exact: Optional[GridFunction] = field(default=None, repr=False)
    normalized: Optional[GridFunction] = field(default=None, repr=False)
    field_paths: Dict[str, str] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, object]:
        """JSON-serializable summary (fields are referenced by path only)."""
        return {
            'alpha': self.alpha,
            'p': self.p,
            'm': self.m,
            'N1': self.N1,
            'N2': self.N2,
            'l1': self.l1,
            'l2': self.l2,
            'delta': self.delta,
            'eps2': self.eps2,
            'epsinf': self.epsinf,
            'rel_l2': self.rel_l2,
            'max_u': self.max_u,
            'runtime_ms': self.runtime_ms,
            'basis_mode': self.basis_mode,
            'path': self.path,
            'rhs': self.rhs,
            'field_paths': dict(self.field_paths),
        }


def relative_errors(approx: GridFunction, exact: GridFunction) -> Tuple[float, float, float]:
    """
    (eps2, epsinf, rel_l2) of approx against exact.

    eps2 is the tabulated mean-square error ||u_m - u||^2 / ||u||^2;
    rel_l2 = sqrt(eps2) is the plain norm ratio and epsinf the max-norm ratio.

    Raises:
        NormalizationError: If the exact field is zero
    """
    exact_l2 = norm_l2(exact)
    exact_inf = norm_inf(exact)
    if exact_l2 == 0.0 or exact_inf == 0.0:
        raise NormalizationError("exact solution is identically zero; relative errors are undefined")
    difference = approx - exact
    rel_l2 = norm_l2(difference) / exact_l2
    return rel_l2 ** 2, norm_inf(difference) / exact_inf, rel_l2


def solution_report(config: SolverConfig, b: GridFunction, rhs: Optional[str] = None,
                    path: str = PATH_SPECTRAL) -> SolveReport:
    """
    Solve, compare against the exact A^(-alpha) b, and normalize by max u.

    Args:
        config: Solver parameters
        b: Right-hand side
        rhs: Name of the right-hand side, recorded in the report
        path: 'spectral' (production) or 'snapshot'

    Raises:
        NormalizationError: If the exact solution is zero or max u is not positive
    """
    started = time.perf_counter()
    match path:
        case "spectral":
            approx = solve_spectral(config, b)
        case "snapshot":
            approx = solve_snapshot(config, b)
        case _:
            raise DomainError(f"unknown solve path {path!r}")

    # The reference uses alpha alone; the p-shift only changes the quadrature
    exact = config.basis.exact_fractional_inverse(b, config.alpha)
    eps2, epsinf, rel_l2 = relative_errors(approx, exact)

    max_u = float(np.max(approx.values))
    if not max_u > 0:
        raise NormalizationError(f"max u = {max_u:.6g} is not positive; cannot normalize")
    normalized = approx * (1.0 / max_u)
    runtime_ms = (time.perf_counter() - started) * 1000.0

    grid = config.basis.grid
    logger.debug(f"alpha={config.alpha} p={config.p} m={config.m} N={grid.N1}x{grid.N2}: "
                 f"eps2={eps2:.6e} epsinf={epsinf:.6e} max_u={max_u:.6e}")
    return SolveReport(
        alpha=config.alpha, p=config.p, m=config.m,
        N1=grid.N1, N2=grid.N2, l1=grid.l1, l2=grid.l2,
        delta=config.delta, eps2=eps2, epsinf=epsinf, rel_l2=rel_l2, max_u=max_u,
        runtime_ms=runtime_ms, basis_mode=config.basis.mode, path=path, rhs=rhs,
        approx=approx, exact=exact, normalized=normalized,
    )
