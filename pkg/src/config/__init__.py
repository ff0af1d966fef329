"""
Configuration management for fracpow.
"""

from .app_config import AppConfig, DEFAULT_CONFIG

__all__ = ['AppConfig', 'DEFAULT_CONFIG']
