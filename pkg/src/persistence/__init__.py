"""
Persistence module for fracpow.

Handles report, field and table files.
"""

from .report_writer import ReportWriter, REPORT_VERSION, FLOAT_FORMAT, FIELD_COLUMNS

__all__ = ['ReportWriter', 'REPORT_VERSION', 'FLOAT_FORMAT', 'FIELD_COLUMNS']
