"""
Utility functions for Vertex Energies
"""

from .constants import APP_NAME, APP_VERSION, DEFAULT_SETTINGS
from .log import logger, set_verbose
from .settings import load_settings, save_settings

__all__ = ['APP_NAME', 'APP_VERSION', 'DEFAULT_SETTINGS', 'logger', 'set_verbose',
           'load_settings', 'save_settings']
