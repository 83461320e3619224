"""
Configuration Package

This package contains all configuration and settings for mopkit.

- settings.py defines every tolerance and default in one place
- values can be overridden through environment variables or a .env file
"""

from .settings import AppConfig, app_config

__all__ = [
    "AppConfig",
    "app_config",
]
