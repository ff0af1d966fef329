"""
Error-table and figure-anchor reproduction.
"""

from .sweep import (
    SweepSpec, TableCell, TableResult, run_table, figure_anchors, alpha_label,
    TABLE_KEYS, DEFAULT_ALPHAS, DEFAULT_MS,
    METRIC_QUADRATURE, METRIC_L2, METRIC_MAX
)
from .reference import (
    DiffReport, load_reference, load_figure_anchors, diff_against_reference, DATA_DIR
)

__all__ = [
    'SweepSpec', 'TableCell', 'TableResult', 'run_table', 'figure_anchors', 'alpha_label',
    'TABLE_KEYS', 'DEFAULT_ALPHAS', 'DEFAULT_MS',
    'METRIC_QUADRATURE', 'METRIC_L2', 'METRIC_MAX',
    'DiffReport', 'load_reference', 'load_figure_anchors', 'diff_against_reference', 'DATA_DIR',
]
