"""
Error-table sweeps.

Table 1 is the scalar quadrature error over a kappa sample set; tables 2-5
are solver errors against the exact spectral solution on the unit square
with delta = mu_1.
"""

from dataclasses import dataclass, field, asdict
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np
import pandas as pd

from app_logging import log_run, LOG_VERBOSE, LOG_DEBUG
from errors import DomainError
from fracsolve import SolverConfig, solution_report
from grid import Grid2D, rhs_by_name
from quadrature import quad_error_table, kappa_samples
from spectral import analytic_eigenpairs, MODE_ANALYTIC
from workers import run_jobs, check_capacity, estimate_basis_bytes

DEFAULT_ALPHAS = (0.1, 0.25, 0.5, 0.75, 0.9)
DEFAULT_MS = (25, 50, 100)

METRIC_QUADRATURE = "eps"
METRIC_L2 = "eps2"
METRIC_MAX = "epsinf"

# Row keys of each table's wide CSV layout
TABLE_KEYS = {
    1: ('m', 'p'),
    2: ('p', 'm', 'error'),
    3: ('p', 'm', 'error'),
    4: ('N', 'm', 'error'),
    5: ('N', 'm', 'error'),
}

_TABLE_DEFAULTS = {
    1: dict(ps=(0, 1, 2, 3, 4), Ns=(), rhs=None),
    2: dict(ps=(0, 1, 2), Ns=(256,), rhs='f1'),
    3: dict(ps=(0, 1, 2), Ns=(256,), rhs='f2'),
    4: dict(ps=(0,), Ns=(32, 64, 128), rhs='f1'),
    5: dict(ps=(0,), Ns=(32, 64, 128), rhs='f2'),
}


def alpha_label(alpha: float) -> str:
    """Column name of an alpha value ('0.1', '0.25', ...)."""
    return f"{alpha:g}"


@dataclass(frozen=True)
class SweepSpec:
    """Parameter sets of one table; defaults mirror the published layout."""
    table: int
    alphas: Tuple[float, ...] = DEFAULT_ALPHAS
    ms: Tuple[int, ...] = DEFAULT_MS
    ps: Tuple[int, ...] = (0,)
    Ns: Tuple[int, ...] = ()
    rhs: Optional[str] = None

    def __post_init__(self):
        if self.table not in TABLE_KEYS:
            raise DomainError(f"table must be one of 1..5, got {self.table}")
        if self.table > 1 and (not self.Ns or self.rhs is None):
            raise DomainError(f"table {self.table} needs grid sizes and a right-hand side")

    @classmethod
    def for_table(cls, table: int, **overrides) -> 'SweepSpec':
        if table not in _TABLE_DEFAULTS:
            raise DomainError(f"table must be one of 1..5, got {table}")
        params = dict(_TABLE_DEFAULTS[table])
        params.update({k: tuple(v) if isinstance(v, (list, tuple)) else v
                       for k, v in overrides.items() if v is not None})
        return cls(table=table, **params)

    @property
    def is_quadrature(self) -> bool:
        return self.table == 1


@dataclass(frozen=True)
class TableCell:
    """One table entry with its full parameter provenance."""
    table: int
    rhs: Optional[str]
    N: Optional[int]
    p: int
    m: int
    alpha: float
    metric: str
    value: float

    def to_dict(self) -> Dict[str, object]:
        return asdict(self)


@dataclass(eq=False)
class TableResult:
    spec: SweepSpec
    cells: List[TableCell]
    frame: pd.DataFrame = field(repr=False)

    def value(self, metric: str, m: int, alpha: float, p: int = 0, N: Optional[int] = None) -> float:
        """Look up one cell by its parameters."""
        for cell in self.cells:
            if (cell.metric == metric and cell.m == m and cell.p == p
                    and cell.alpha == alpha and (N is None or cell.N == N)):
                return cell.value
        raise KeyError((metric, m, alpha, p, N))


def _quadrature_cells(spec: SweepSpec, kappa: np.ndarray, polish: bool) -> List[TableCell]:
    errors = quad_error_table(spec.ms, spec.ps, spec.alphas, kappa, polish)
    return [
        TableCell(table=1, rhs=None, N=None, p=p, m=m, alpha=alpha, metric=METRIC_QUADRATURE,
                  value=value)
        for (m, p, alpha), value in errors.items()
    ]


def _solver_cells(spec: SweepSpec, threads: int, polish: bool) -> List[TableCell]:
    cells = []
    for N in spec.Ns:
        grid = Grid2D.unit_square(N)
        check_capacity(estimate_basis_bytes(grid, MODE_ANALYTIC), f"basis on {grid.describe()}")
        log_run(f"Table {spec.table}: building basis on {grid.describe()}", LOG_VERBOSE)
        # One basis per N, shared read-only by every cell on that grid
        basis = analytic_eigenpairs(grid)
        b = rhs_by_name(spec.rhs, grid)

        params = [(p, m, alpha) for p in spec.ps for m in spec.ms for alpha in spec.alphas]
        jobs = [
            (lambda p=p, m=m, alpha=alpha: solution_report(
                SolverConfig(alpha=alpha, p=p, m=m, basis=basis, polish=polish), b, rhs=spec.rhs))
            for p, m, alpha in params
        ]
        reports = run_jobs(jobs, threads)

        for (p, m, alpha), report in zip(params, reports):
            log_run(f"  N={N} p={p} m={m} alpha={alpha}: eps2={report.eps2:.6e} epsinf={report.epsinf:.6e}",
                    LOG_DEBUG)
            for metric, value in ((METRIC_L2, report.eps2), (METRIC_MAX, report.epsinf)):
                cells.append(TableCell(table=spec.table, rhs=spec.rhs, N=N, p=p, m=m,
                                       alpha=alpha, metric=metric, value=value))
    return cells


def _wide_frame(spec: SweepSpec, cells: List[TableCell]) -> pd.DataFrame:
    """Rows keyed as in TABLE_KEYS, one column per alpha."""
    lookup = {(c.N, c.p, c.m, c.metric, c.alpha): c.value for c in cells}
    rows = []

    def row(keys: Dict[str, object], N, p, m, metric):
        values = {alpha_label(a): lookup[(N, p, m, metric, a)] for a in spec.alphas}
        rows.append({**keys, **values})

    if spec.is_quadrature:
        for m in spec.ms:
            for p in spec.ps:
                row({'m': m, 'p': p}, None, p, m, METRIC_QUADRATURE)
    elif spec.table in (2, 3):
        N = spec.Ns[0]
        for p in spec.ps:
            for m in spec.ms:
                for metric in (METRIC_L2, METRIC_MAX):
                    row({'p': p, 'm': m, 'error': metric}, N, p, m, metric)
    else:
        p = spec.ps[0]
        for N in spec.Ns:
            for m in spec.ms:
                for metric in (METRIC_L2, METRIC_MAX):
                    row({'N': N, 'm': m, 'error': metric}, N, p, m, metric)

    columns = list(TABLE_KEYS[spec.table]) + [alpha_label(a) for a in spec.alphas]
    return pd.DataFrame(rows, columns=columns)


def run_table(spec: SweepSpec, threads: int = 1, kappa: Optional[np.ndarray] = None,
              polish: bool = False) -> TableResult:
    """
    Compute every cell of a table.

    Args:
        spec: Sweep parameters
        threads: Worker cap for solver cells
        kappa: Sample set for table 1 (defaults to kappa_samples())
        polish: Newton polish of Laguerre nodes

    Returns:
        TableResult with cells and the wide frame

    Raises:
        CapacityError: If a grid's basis does not fit in memory
    """
    log_run(f"Running table {spec.table}")
    if spec.is_quadrature:
        samples = kappa_samples() if kappa is None else np.asarray(kappa, dtype=np.float64)
        cells = _quadrature_cells(spec, samples, polish)
    else:
        cells = _solver_cells(spec, threads, polish)
    return TableResult(spec=spec, cells=cells, frame=_wide_frame(spec, cells))


def figure_anchors(rhs: str, alphas: Iterable[float] = (0.1, 0.25, 0.5, 0.75),
                   N: int = 256, m: int = 100, p: int = 0, threads: int = 1) -> Dict[float, float]:
    """
    max u of the approximate solution per alpha (normalization constant of
    the plotted field y = u / max u).
    """
    grid = Grid2D.unit_square(N)
    check_capacity(estimate_basis_bytes(grid, MODE_ANALYTIC), f"basis on {grid.describe()}")
    basis = analytic_eigenpairs(grid)
    b = rhs_by_name(rhs, grid)
    alphas = list(alphas)
    jobs = [
        (lambda alpha=alpha: solution_report(SolverConfig(alpha=alpha, p=p, m=m, basis=basis), b, rhs=rhs).max_u)
        for alpha in alphas
    ]
    return dict(zip(alphas, run_jobs(jobs, threads)))
