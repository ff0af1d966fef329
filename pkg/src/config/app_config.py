"""
Application configuration management.

Handles loading and saving of persistent defaults (logging level, solver
limits, benchmark sampling, thread count) and parsing of per-run key=value
files passed with --config.
"""

import copy
import json
import logging
import os
try:
    import tomllib
except ImportError:  # Python < 3.11
    import tomli as tomllib
from pathlib import Path
from typing import Dict, Any, Optional

import psutil

from errors import UsageError

logger = logging.getLogger(__name__)


# Config directory and file paths
CONFIG_DIR = Path(os.environ.get("FRACPOW_HOME", Path.home() / ".fracpow"))
CONFIG_FILE = CONFIG_DIR / "config.json"

THREADS_ENV_VAR = "FRACPOW_THREADS"


# Default configuration
DEFAULT_CONFIG = {
    "logging": {
        "level": "NORMAL"  # MINIMAL, NORMAL, VERBOSE, DEBUG
    },
    "solver": {
        "dense_cap": 4096,  # max K for dense assembly / eigensolve
        "polish_nodes": False,  # Newton polish of Laguerre nodes
        "max_grid_nodes": 1024  # max N per axis accepted by the CLI
    },
    "bench": {
        "kappa_min": 1.0,
        "kappa_max": 1e5,
        "kappa_count": 2000,
        "kappa_zero": False,  # prepend kappa = 0 to the sample set
        "tolerance": 0.01  # default relative tolerance for --check
    },
    "runtime": {
        "threads": None  # None = physical core count
    },
    "output": {
        "directory": "results"
    }
}


class AppConfig:
    """Application configuration manager."""

    @staticmethod
    def load_config() -> Dict[str, Any]:
        """
        Load configuration from file.

        Returns:
            Config dict, or default config if file doesn't exist or is unreadable
        """
        config_file = AppConfig._config_file()
        if not config_file.exists():
            return copy.deepcopy(DEFAULT_CONFIG)

        try:
            with open(config_file, 'r', encoding='utf-8') as f:
                stored = json.load(f)
        except (OSError, ValueError) as e:
            logger.warning(f"Error loading config {config_file}: {e}")
            return copy.deepcopy(DEFAULT_CONFIG)

        # Merge section by section so new keys pick up defaults
        config = copy.deepcopy(DEFAULT_CONFIG)
        for section, values in stored.items():
            if isinstance(values, dict) and isinstance(config.get(section), dict):
                config[section].update(values)
            else:
                config[section] = values
        return config

    @staticmethod
    def save_config(config: Dict[str, Any]) -> bool:
        """
        Save configuration to file.

        Args:
            config: Configuration dict to save

        Returns:
            True if successful, False otherwise
        """
        config_file = AppConfig._config_file()
        try:
            config_file.parent.mkdir(parents=True, exist_ok=True)
            with open(config_file, 'w', encoding='utf-8') as f:
                json.dump(config, f, indent=2)
            return True
        except OSError as e:
            logger.warning(f"Error saving config {config_file}: {e}")
            return False

    @staticmethod
    def get_log_level() -> str:
        """
        Get saved log verbosity level.

        Returns:
            Log level string (MINIMAL, NORMAL, VERBOSE, DEBUG)
        """
        config = AppConfig.load_config()
        return config.get('logging', {}).get('level', 'NORMAL')

    @staticmethod
    def save_log_level(level: str) -> bool:
        """
        Save log verbosity level.

        Args:
            level: Log level (MINIMAL, NORMAL, VERBOSE, DEBUG)

        Returns:
            True if successful
        """
        config = AppConfig.load_config()
        config.setdefault('logging', {})['level'] = level
        return AppConfig.save_config(config)

    @staticmethod
    def get_solver_settings() -> Dict[str, Any]:
        """Dense cap, node polishing and grid-size limit."""
        return AppConfig.load_config()['solver']

    @staticmethod
    def get_bench_settings() -> Dict[str, Any]:
        """Kappa sampling and default check tolerance."""
        return AppConfig.load_config()['bench']

    @staticmethod
    def get_runtime_settings() -> Dict[str, Any]:
        return AppConfig.load_config()['runtime']

    @staticmethod
    def get_output_settings() -> Dict[str, Any]:
        return AppConfig.load_config()['output']

    @staticmethod
    def resolve_threads(flag: Optional[int] = None) -> int:
        """
        Decide the worker count for parallel sweeps.

        Precedence: --threads flag, FRACPOW_THREADS, config runtime.threads,
        physical core count.

        Args:
            flag: Value of --threads, or None when not given

        Returns:
            Positive worker count

        Raises:
            UsageError: If any source holds a non-positive or non-integer value
        """
        if flag is not None:
            return AppConfig._positive_threads(flag, "--threads")

        env_value = os.environ.get(THREADS_ENV_VAR)
        if env_value:
            return AppConfig._positive_threads(env_value, THREADS_ENV_VAR)

        configured = AppConfig.get_runtime_settings().get('threads')
        if configured is not None:
            return AppConfig._positive_threads(configured, "runtime.threads")

        return max(1, psutil.cpu_count(logical=False) or 1)

    @staticmethod
    def load_run_file(path: Path) -> Dict[str, Any]:
        """
        Parse an optional run file of `key = value` lines.

        Values are read as TOML scalars where possible (numbers, booleans,
        quoted strings); anything else is kept as a bare string, so
        `rhs = f2` and `rhs = "f2"` are equivalent. Dashes in keys become
        underscores so keys match flag destinations.

        Args:
            path: Run file location

        Returns:
            Dict of key -> value

        Raises:
            UsageError: If the file is missing or a line is not key = value
        """
        path = Path(path)
        try:
            text = path.read_text(encoding='utf-8')
        except OSError as e:
            raise UsageError(f"cannot read config file {path}: {e}") from e

        values: Dict[str, Any] = {}
        for line_number, raw_line in enumerate(text.splitlines(), start=1):
            line = raw_line.split('#', 1)[0].strip()
            if not line:
                continue
            if '=' not in line:
                raise UsageError(f"{path}:{line_number}: expected 'key = value', got {raw_line.strip()!r}")

            key, raw_value = (part.strip() for part in line.split('=', 1))
            if not key or not raw_value:
                raise UsageError(f"{path}:{line_number}: empty key or value")
            values[key.replace('-', '_')] = AppConfig._parse_scalar(raw_value)

        return values

    @staticmethod
    def _parse_scalar(raw_value: str) -> Any:
        try:
            return tomllib.loads(f"value = {raw_value}")['value']
        except tomllib.TOMLDecodeError:
            return raw_value

    @staticmethod
    def _positive_threads(value: Any, source: str) -> int:
        try:
            threads = int(value)
        except (TypeError, ValueError):
            raise UsageError(f"{source} must be a positive integer, got {value!r}")
        if threads < 1:
            raise UsageError(f"{source} must be a positive integer, got {value!r}")
        return threads

    @staticmethod
    def _config_file() -> Path:
        # Looked up at call time so tests can redirect CONFIG_FILE
        return CONFIG_FILE
