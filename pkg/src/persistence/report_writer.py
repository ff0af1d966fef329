"""
Report writer for fracpow.

Handles saving and loading solve reports (JSON), field dumps and table
CSVs.
"""

import json
import logging
from datetime import datetime
from pathlib import Path
from typing import Optional, Dict, Any

import numpy as np
import pandas as pd

from errors import DimensionError
from grid import Grid2D, GridFunction

logger = logging.getLogger(__name__)

REPORT_VERSION = '1.0'
FLOAT_FORMAT = '%.17g'
FIELD_COLUMNS = ['i1', 'i2', 'x1', 'x2', 'value']


class ReportWriter:
    """Manages result file persistence."""

    @staticmethod
    def save_report(report: Dict[str, Any], path: Path) -> bool:
        """
        Save a report dict as JSON.

        Args:
            report: JSON-serializable report (e.g. SolveReport.to_dict())
            path: Target file

        Returns:
            True if successful, False otherwise
        """
        path = Path(path)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            data = {
                'version': REPORT_VERSION,
                'saved_at': datetime.now().isoformat(),
                **report,
            }
            with open(path, 'w', encoding='utf-8') as f:
                json.dump(data, f, indent=2)
            return True

        except (OSError, TypeError, ValueError) as e:
            logger.error(f"Error saving report {path}: {e}")
            return False

    @staticmethod
    def load_report(path: Path) -> Optional[Dict[str, Any]]:
        """
        Load a report from file.

        Returns:
            Report dict, or None if the file is missing or corrupt
        """
        path = Path(path)
        if not path.exists():
            return None
        try:
            with open(path, 'r', encoding='utf-8') as f:
                return json.load(f)

        except (OSError, ValueError) as e:
            logger.error(f"Error loading report {path}: {e}")
            # Back up corrupt file
            backup_name = f"{path.stem}_corrupted_{datetime.now().strftime('%Y%m%d_%H%M%S')}.json"
            backup_path = path.parent / backup_name
            try:
                path.rename(backup_path)
                logger.warning(f"Corrupt report backed up to: {backup_path}")
            except OSError:
                pass
            return None

    @staticmethod
    def field_frame(field: GridFunction) -> pd.DataFrame:
        """Long-format table of a field, i2 varying fastest."""
        grid = field.grid
        i1, i2 = grid.indices()
        return pd.DataFrame({
            'i1': i1,
            'i2': i2,
            'x1': i1 * grid.h1,
            'x2': i2 * grid.h2,
            'value': field.values,
        })

    @staticmethod
    def write_field_csv(field: GridFunction, path: Path) -> Path:
        """Write `i1,i2,x1,x2,value` rows with 17 significant digits."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        ReportWriter.field_frame(field).to_csv(path, index=False, float_format=FLOAT_FORMAT, encoding='utf-8')
        return path

    @staticmethod
    def read_field_csv(path: Path, grid: Grid2D) -> GridFunction:
        """
        Read a field dump back onto a grid.

        Raises:
            DimensionError: If the dump does not cover exactly the grid's interior nodes
        """
        frame = pd.read_csv(path, encoding='utf-8', float_precision='round_trip')
        if list(frame.columns) != FIELD_COLUMNS:
            raise DimensionError(f"{path}: expected columns {','.join(FIELD_COLUMNS)}")
        if len(frame) != grid.K:
            raise DimensionError(f"{path}: {len(frame)} rows for {grid.describe()}")

        i1, i2 = grid.indices()
        if not (np.array_equal(frame['i1'].to_numpy(), i1) and np.array_equal(frame['i2'].to_numpy(), i2)):
            raise DimensionError(f"{path}: node indices do not match {grid.describe()}")
        return GridFunction(grid, frame['value'].to_numpy(dtype=np.float64))

    @staticmethod
    def write_table_csv(frame: pd.DataFrame, path: Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, encoding='utf-8')
        return path

    @staticmethod
    def read_table_csv(path: Path) -> pd.DataFrame:
        return pd.read_csv(path, encoding='utf-8', float_precision='round_trip')
