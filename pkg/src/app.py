"""
Main application entry point - command-line frontend for fracpow.

Subcommands:
    solve       approximate u = A^(-alpha) b and report its errors
    quad-error  quadrature error of the scalar kernel integral
    table       reproduce an error table, optionally checked against the published values
    dump-field  write one field (rhs, solution, exact, normalized) as CSV
"""

import argparse
import math
import sys
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Any, Dict, List, Optional

import pandas as pd

from app_logging import log_run, set_log_level, normalize_level, recent_messages, LOG_VERBOSE
from bench import SweepSpec, run_table, load_reference, diff_against_reference
from config import AppConfig
from errors import (
    FracPowError, UsageError, describe_error, exit_code_for,
    check_alpha, check_shift, check_positive_int, check_positive,
    EXIT_OK, EXIT_CHECK_FAILED
)
from fracsolve import SolverConfig, solution_report, solve_spectral, PATH_SPECTRAL, PATH_SNAPSHOT
from grid import Grid2D, RHS_BUILDERS, rhs_by_name
from operators import CoefficientField, EllipticOperator
from persistence import ReportWriter, FLOAT_FORMAT
from quadrature import quad_error_study, kappa_samples
from spectral import basis_for, MODE_ANALYTIC, MODE_DENSE
from workers import check_capacity, estimate_basis_bytes

BASIS_CHOICES = ('auto', 'analytic', 'dense')
FIELD_CHOICES = ('rhs', 'solution', 'exact', 'normalized')
QUAD_COLUMNS = ['m', 'p', 'alpha', 'epsilon']

# Run parameters that must be numbers, with the type they are coerced to
NUMERIC_PARAMS = {
    'alpha': float, 'm': int, 'p': int, 'N': int, 'l1': float, 'l2': float,
    'a0': float, 'c0': float, 'kappa_count': int, 'table': int, 'tol': float, 'threads': int,
}
TEXT_PARAMS = ('rhs', 'basis', 'path', 'report', 'field_csv', 'csv', 'diff', 'field', 'out',
               'output_dir', 'log_level')


def fmt(value: float) -> str:
    """17 significant digits, enough to round-trip a double."""
    return f"{value:.17g}"


@dataclass
class RunConfig:
    """
    Merged run parameters: built-in defaults, then --config file values,
    then explicit flags.
    """
    command: str
    alpha: Optional[float] = None
    m: Optional[int] = None
    p: int = 0
    N: int = 256
    l1: float = 1.0
    l2: float = 1.0
    rhs: str = 'f1'
    delta: Any = 'auto'
    a0: float = 1.0
    c0: float = 0.0
    basis: str = 'auto'
    path: str = PATH_SPECTRAL
    report: Optional[str] = None
    field_csv: Optional[str] = None
    kappa_count: Optional[int] = None
    table: Optional[int] = None
    check: bool = False
    tol: Optional[float] = None
    csv: Optional[str] = None
    diff: Optional[str] = None
    field: str = 'solution'
    out: Optional[str] = None
    threads: Optional[int] = None
    output_dir: Optional[str] = None
    log_level: Optional[str] = None

    # Parameters not passed on the command line
    config: Optional[str] = None

    @classmethod
    def from_namespace(cls, args: argparse.Namespace) -> 'RunConfig':
        known = {f.name for f in fields(cls)}
        merged: Dict[str, Any] = {}

        if args.config:
            for key, value in AppConfig.load_run_file(Path(args.config)).items():
                if key not in known or key == 'command':
                    raise UsageError(f"{args.config}: unknown key {key!r}")
                merged[key] = value

        for key, value in vars(args).items():
            if key in known and value is not None:
                merged[key] = value
        return cls(**merged)

    def validate(self):
        """
        Check every parameter the command will use.

        Raises:
            UsageError: Missing or malformed values
            DomainError: Values outside their mathematical range
        """
        self._coerce_types()
        solver_settings = AppConfig.get_solver_settings()

        if self.command in ('solve', 'dump-field'):
            if self.command == 'solve' and (self.alpha is None or self.m is None):
                raise UsageError("solve needs --alpha and --m")
            max_nodes = int(solver_settings.get('max_grid_nodes', 1024))
            check_positive_int(self.N, "N")
            if self.N < 2 or self.N > max_nodes:
                raise UsageError(f"N must lie in [2, {max_nodes}], got {self.N}")
            check_positive(self.l1, "l1")
            check_positive(self.l2, "l2")
            if self.rhs not in RHS_BUILDERS:
                raise UsageError(f"unknown right-hand side {self.rhs!r}; expected one of {', '.join(RHS_BUILDERS)}")
            if self.basis not in BASIS_CHOICES:
                raise UsageError(f"--basis must be one of {', '.join(BASIS_CHOICES)}")
            if self.path not in (PATH_SPECTRAL, PATH_SNAPSHOT):
                raise UsageError(f"--path must be '{PATH_SPECTRAL}' or '{PATH_SNAPSHOT}'")
            if self.delta != 'auto':
                self.delta = check_positive(_as_float(self.delta, "delta"), "delta")
            check_positive(self.a0, "a0")
            if not (math.isfinite(self.c0) and self.c0 >= 0):
                raise UsageError(f"c0 must be nonnegative, got {self.c0}")

        if self.command == 'dump-field':
            if self.field not in FIELD_CHOICES:
                raise UsageError(f"--field must be one of {', '.join(FIELD_CHOICES)}")
            if self.out is None:
                raise UsageError("dump-field needs --out")
            if self.alpha is None:
                self.alpha = 0.5
            if self.m is None:
                self.m = 100

        if self.command in ('solve', 'dump-field', 'quad-error'):
            if self.command == 'quad-error' and (self.alpha is None or self.m is None):
                raise UsageError("quad-error needs --alpha and --m")
            check_alpha(self.alpha)
            check_positive_int(self.m, "m")
            check_shift(self.p)

        if self.command == 'quad-error' and self.kappa_count is not None:
            check_positive_int(self.kappa_count, "kappa count")

        if self.command == 'table':
            if self.table not in (1, 2, 3, 4, 5):
                raise UsageError("table needs --table 1..5")
            if self.tol is not None and not (math.isfinite(self.tol) and self.tol >= 0):
                raise UsageError(f"--tol must be nonnegative, got {self.tol}")

        if self.threads is not None:
            check_positive_int(self.threads, "threads")
        if self.log_level is not None:
            try:
                self.log_level = normalize_level(self.log_level)
            except ValueError as e:
                raise UsageError(str(e))

    def _coerce_types(self):
        """Run-file values arrive untyped; bring them to the flag types."""
        for name, kind in NUMERIC_PARAMS.items():
            value = getattr(self, name)
            if value is not None:
                setattr(self, name, _as_number(value, kind, name))
        for name in TEXT_PARAMS:
            value = getattr(self, name)
            if value is not None and not isinstance(value, str):
                raise UsageError(f"{name} must be text, got {value!r}")
        if not isinstance(self.check, bool):
            raise UsageError(f"check must be true or false, got {self.check!r}")

    def output_path(self, value: str) -> Path:
        """Relative output paths land in the output directory."""
        path = Path(value)
        if path.is_absolute():
            return path
        directory = self.output_dir or AppConfig.get_output_settings().get('directory', 'results')
        return Path(directory) / path


def _as_float(value: Any, name: str) -> float:
    try:
        return float(value)
    except (TypeError, ValueError):
        raise UsageError(f"{name} must be a number or 'auto', got {value!r}")


def _as_number(value: Any, kind: type, name: str):
    if isinstance(value, bool):
        raise UsageError(f"{name} must be a number, got {value!r}")
    try:
        if kind is float:
            return float(value)
        if isinstance(value, float):
            if not value.is_integer():
                raise ValueError(value)
            return int(value)
        return int(value)
    except (TypeError, ValueError, OverflowError):
        expected = "a number" if kind is float else "an integer"
        raise UsageError(f"{name} must be {expected}, got {value!r}")


### MARK: Commands

def _build_problem(run: RunConfig):
    """Grid, operator, basis and right-hand side for solve / dump-field."""
    grid = Grid2D(run.N, run.N, run.l1, run.l2)
    operator = EllipticOperator(grid, CoefficientField.constant(run.a0, run.c0))

    dense_cap = int(AppConfig.get_solver_settings().get('dense_cap', 4096))
    mode = MODE_DENSE if run.basis == 'dense' else MODE_ANALYTIC
    check_capacity(estimate_basis_bytes(grid, mode), f"{mode} basis on {grid.describe()}")

    log_run(f"Building {run.basis} basis on {grid.describe()}", LOG_VERBOSE)
    basis = basis_for(operator, run.basis, dense_cap)
    b = rhs_by_name(run.rhs, grid)
    return grid, operator, basis, b


def _solver_config(run: RunConfig, operator, basis) -> SolverConfig:
    polish = bool(AppConfig.get_solver_settings().get('polish_nodes', False))
    return SolverConfig(
        alpha=run.alpha, p=run.p, m=run.m, basis=basis,
        delta=None if run.delta == 'auto' else run.delta,
        operator=operator, polish=polish,
    )


def cmd_solve(run: RunConfig) -> int:
    grid, operator, basis, b = _build_problem(run)
    config = _solver_config(run, operator, basis)

    log_run(f"Solving alpha={run.alpha} p={run.p} m={run.m} on {grid.describe()} ({run.path} path)")
    report = solution_report(config, b, rhs=run.rhs, path=run.path)

    if run.field_csv:
        prefix = run.output_path(run.field_csv)
        for name, field in (('solution', report.approx), ('exact', report.exact),
                            ('normalized', report.normalized)):
            target = prefix.with_name(f"{prefix.name}_{name}.csv")
            ReportWriter.write_field_csv(field, target)
            report.field_paths[name] = str(target)

    print(f"eps2 {fmt(report.eps2)}")
    print(f"rel_l2 {fmt(report.rel_l2)}")
    print(f"epsinf {fmt(report.epsinf)}")
    print(f"max_u {fmt(report.max_u)}")
    print(f"delta {fmt(report.delta)}")

    if run.report:
        target = run.output_path(run.report)
        if not ReportWriter.save_report({**report.to_dict(), 'log': recent_messages()}, target):
            raise UsageError(f"could not write report {target}")
        log_run(f"Report written to {target}")
    return EXIT_OK


def _bench_samples(count: Optional[int] = None):
    """kappa sample set from the bench settings."""
    bench = AppConfig.get_bench_settings()
    return kappa_samples(float(bench['kappa_min']), float(bench['kappa_max']),
                         count if count is not None else int(bench['kappa_count']),
                         include_zero=bool(bench.get('kappa_zero', False)))


def cmd_quad_error(run: RunConfig) -> int:
    samples = _bench_samples(run.kappa_count)
    polish = bool(AppConfig.get_solver_settings().get('polish_nodes', False))

    eps = quad_error_study(run.m, run.alpha, run.p, samples, polish)
    frame = pd.DataFrame([[run.m, run.p, repr(run.alpha), eps]], columns=QUAD_COLUMNS)
    sys.stdout.write(frame.to_csv(index=False, float_format=FLOAT_FORMAT))

    if run.csv:
        target = ReportWriter.write_table_csv(frame, run.output_path(run.csv))
        log_run(f"Quadrature error written to {target}")
    return EXIT_OK


def cmd_table(run: RunConfig) -> int:
    bench = AppConfig.get_bench_settings()
    threads = AppConfig.resolve_threads(run.threads)
    samples = _bench_samples()
    polish = bool(AppConfig.get_solver_settings().get('polish_nodes', False))

    result = run_table(SweepSpec.for_table(run.table), threads=threads, kappa=samples, polish=polish)
    sys.stdout.write(result.frame.to_csv(index=False, float_format=FLOAT_FORMAT))

    target = ReportWriter.write_table_csv(result.frame, run.output_path(run.csv or f"table{run.table}.csv"))
    log_run(f"Table written to {target}")

    if not run.check:
        return EXIT_OK

    tolerance = run.tol if run.tol is not None else float(bench['tolerance'])
    diff = diff_against_reference(result.frame, load_reference(run.table), tolerance)
    if run.diff:
        ReportWriter.save_report(diff.to_dict(), run.output_path(run.diff))

    if diff.passed:
        log_run(f"Table {run.table} matches the reference within {tolerance:g} "
                f"(max deviation {diff.max_deviation:.3e})")
        return EXIT_OK

    log_run(f"Table {run.table}: {len(diff.failures)} of {diff.cells_checked} cells exceed {tolerance:g} "
            f"(max deviation {diff.max_deviation:.3e})")
    for failure in diff.failures:
        log_run(f"  {failure}", LOG_VERBOSE)
    return EXIT_CHECK_FAILED


def cmd_dump_field(run: RunConfig) -> int:
    grid, operator, basis, b = _build_problem(run)

    match run.field:
        case 'rhs':
            field = b
        case 'solution':
            field = solve_spectral(_solver_config(run, operator, basis), b)
        case 'exact':
            field = basis.exact_fractional_inverse(b, run.alpha)
        case _:
            field = solution_report(_solver_config(run, operator, basis), b, rhs=run.rhs).normalized

    target = ReportWriter.write_field_csv(field, run.output_path(run.out))
    log_run(f"{run.field} field written to {target}")
    return EXIT_OK


COMMANDS = {
    'solve': cmd_solve,
    'quad-error': cmd_quad_error,
    'table': cmd_table,
    'dump-field': cmd_dump_field,
}


### MARK: Parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='fracpow',
        description="Fractional powers of a 2-D elliptic grid operator via Gauss-Laguerre quadrature",
    )
    parser.add_argument('--config', help="key = value run file; flags override its values")
    parser.add_argument('--threads', type=int, help="worker cap (default: $FRACPOW_THREADS or core count)")
    parser.add_argument('--log-level', dest='log_level', help="MINIMAL, NORMAL, VERBOSE or DEBUG")
    parser.add_argument('--output-dir', dest='output_dir', help="directory for relative output paths")

    sub = parser.add_subparsers(dest='command', required=True)

    solve = sub.add_parser('solve', help="solve u = A^(-alpha) b and report errors")
    _add_problem_flags(solve)
    solve.add_argument('--basis', choices=BASIS_CHOICES)
    solve.add_argument('--path', choices=(PATH_SPECTRAL, PATH_SNAPSHOT))
    solve.add_argument('--report', help="write the JSON report here")
    solve.add_argument('--field-csv', dest='field_csv', help="prefix for solution/exact/normalized CSVs")

    quad = sub.add_parser('quad-error', help="scalar quadrature error over the kappa samples")
    quad.add_argument('--alpha', type=float)
    quad.add_argument('--m', type=int)
    quad.add_argument('--p', type=int)
    quad.add_argument('--kappa-count', dest='kappa_count', type=int)
    quad.add_argument('--csv', help="also write the CSV here")

    table = sub.add_parser('table', help="reproduce error table 1..5")
    table.add_argument('--table', type=int, choices=(1, 2, 3, 4, 5))
    table.add_argument('--check', action='store_true', default=None,
                       help="compare against the published values (exit 1 on failure)")
    table.add_argument('--tol', type=float, help="relative tolerance for --check")
    table.add_argument('--csv', help="table CSV path (default: tableN.csv in the output directory)")
    table.add_argument('--diff', help="write the JSON diff report here")

    dump = sub.add_parser('dump-field', help="write a field as CSV")
    _add_problem_flags(dump)
    dump.add_argument('--field', choices=FIELD_CHOICES)
    dump.add_argument('--basis', choices=BASIS_CHOICES)
    dump.add_argument('--out')

    return parser


def _add_problem_flags(parser: argparse.ArgumentParser):
    parser.add_argument('--alpha', type=float)
    parser.add_argument('--m', type=int)
    parser.add_argument('--p', type=int)
    parser.add_argument('--N', type=int)
    parser.add_argument('--l1', type=float)
    parser.add_argument('--l2', type=float)
    parser.add_argument('--rhs')
    parser.add_argument('--delta', help="lower spectral bound, or 'auto' for mu_1")
    parser.add_argument('--a0', type=float)
    parser.add_argument('--c0', type=float)


### MARK: Main

def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        run = RunConfig.from_namespace(args)
        run.validate()
        set_log_level(run.log_level)
        return COMMANDS[run.command](run)

    except FracPowError as e:
        print(describe_error(e), file=sys.stderr)
        return exit_code_for(e)


if __name__ == '__main__':
    sys.exit(main())
