"""
Published reference tables and comparison of produced tables against them.
"""

import hashlib
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd

from errors import ReferenceDataError, ShapeMismatchError, DomainError

logger = logging.getLogger(__name__)

DATA_DIR = Path(__file__).resolve().parent / "data"
CHECKSUM_FILE = "checksums.json"
FIGURE_FILE = "figures.csv"

KEY_COLUMNS = ('m', 'p', 'N', 'error')


def _sha256(path: Path) -> str:
    h = hashlib.sha256()
    with path.open("rb") as f:
        while True:
            chunk = f.read(1024 * 1024)
            if not chunk:
                break
            h.update(chunk)
    return h.hexdigest()


def _verified_path(name: str, data_dir: Path) -> Path:
    """
    Raises:
        ReferenceDataError: Missing file, missing checksum entry or digest mismatch
    """
    path = data_dir / name
    checksum_path = data_dir / CHECKSUM_FILE
    if not path.exists():
        raise ReferenceDataError(f"reference file {path} not found")
    try:
        checksums = json.loads(checksum_path.read_text(encoding="utf-8"))
    except (OSError, ValueError) as e:
        raise ReferenceDataError(f"cannot read {checksum_path}: {e}") from e

    expected = checksums.get(name)
    if expected is None:
        raise ReferenceDataError(f"no checksum recorded for {name}")
    actual = _sha256(path)
    if actual != expected:
        raise ReferenceDataError(f"{name}: sha256 {actual} does not match recorded {expected}")
    return path


def load_reference(table: int, data_dir: Optional[Path] = None) -> pd.DataFrame:
    """
    Published values of table 1..5 in the wide layout produced by run_table.

    Raises:
        DomainError: Unknown table id
        ReferenceDataError: If the shipped file fails its checksum
    """
    if table not in (1, 2, 3, 4, 5):
        raise DomainError(f"table must be one of 1..5, got {table}")
    path = _verified_path(f"table{table}.csv", Path(data_dir) if data_dir else DATA_DIR)
    return pd.read_csv(path, encoding="utf-8")


def load_figure_anchors(rhs: str, data_dir: Optional[Path] = None) -> Dict[float, float]:
    """Published max u per alpha for a right-hand side ('f1' or 'f2')."""
    path = _verified_path(FIGURE_FILE, Path(data_dir) if data_dir else DATA_DIR)
    frame = pd.read_csv(path, encoding="utf-8")
    selected = frame[frame['rhs'] == rhs]
    if selected.empty:
        raise DomainError(f"no figure anchors for right-hand side {rhs!r}")
    return {float(a): float(v) for a, v in zip(selected['alpha'], selected['max_u'])}


@dataclass
class DiffReport:
    passed: bool
    max_deviation: float
    tolerance: float
    cells_checked: int
    failures: List[Dict[str, Any]] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'passed': self.passed,
            'max_deviation': self.max_deviation,
            'tolerance': self.tolerance,
            'cells_checked': self.cells_checked,
            'failures': list(self.failures),
        }


def _plain(value):
    return value.item() if isinstance(value, np.generic) else value


def _split_columns(frame: pd.DataFrame):
    keys = [c for c in frame.columns if str(c) in KEY_COLUMNS]
    values = [c for c in frame.columns if str(c) not in KEY_COLUMNS]
    return keys, values


def diff_against_reference(produced: pd.DataFrame, reference: pd.DataFrame,
                           tolerance: float) -> DiffReport:
    """
    Per-cell relative deviation |produced - reference| / |reference|.

    Args:
        produced: Table computed by run_table
        reference: Published table (same layout)
        tolerance: Largest accepted relative deviation

    Returns:
        DiffReport listing every cell above tolerance

    Raises:
        ShapeMismatchError: If columns or row keys differ
    """
    if not tolerance >= 0:
        raise DomainError(f"tolerance must be nonnegative, got {tolerance}")
    if [str(c) for c in produced.columns] != [str(c) for c in reference.columns]:
        raise ShapeMismatchError(
            f"columns differ: {list(map(str, produced.columns))} vs {list(map(str, reference.columns))}"
        )
    if produced.shape != reference.shape:
        raise ShapeMismatchError(f"shape {produced.shape} vs reference {reference.shape}")

    keys, value_columns = _split_columns(produced)
    produced_keys = produced[keys].astype(str).to_numpy()
    reference_keys = reference[[c for c in reference.columns if str(c) in KEY_COLUMNS]].astype(str).to_numpy()
    if not np.array_equal(produced_keys, reference_keys):
        raise ShapeMismatchError("row keys differ from the reference table")

    ours = produced[value_columns].to_numpy(dtype=np.float64)
    theirs = reference[[c for c in reference.columns if str(c) not in KEY_COLUMNS]].to_numpy(dtype=np.float64)
    scale = np.where(theirs != 0.0, np.abs(theirs), 1.0)
    deviation = np.abs(ours - theirs) / scale

    failures = []
    for row, col in zip(*np.nonzero(~(deviation <= tolerance))):
        failures.append({
            **{str(k): _plain(produced.iloc[row][k]) for k in keys},
            'alpha': str(value_columns[col]),
            'produced': float(ours[row, col]),
            'reference': float(theirs[row, col]),
            'deviation': float(deviation[row, col]),
        })

    max_deviation = float(np.max(deviation)) if deviation.size else 0.0
    logger.debug(f"diff: {deviation.size} cells, max deviation {max_deviation:.3e}, {len(failures)} above {tolerance}")
    return DiffReport(
        passed=not failures,
        max_deviation=max_deviation,
        tolerance=float(tolerance),
        cells_checked=int(deviation.size),
        failures=failures,
    )
