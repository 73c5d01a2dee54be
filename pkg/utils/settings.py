"""
Settings loader - merges a JSON settings file over the built-in defaults
"""

import os
import json

from utils.constants import DEFAULT_SETTINGS, get_app_dirs
from utils.log import logger


def load_settings(settings_file=None, strict=False):
    """Load settings, falling back to defaults for anything missing

    With strict=True an unreadable or malformed file raises instead of
    falling back to the defaults.
    """
    settings = dict(DEFAULT_SETTINGS)
    if settings_file is None:
        settings_file = get_app_dirs()['settings']
        if not os.path.exists(settings_file):
            return settings

    try:
        with open(settings_file, 'r', encoding='utf-8') as f:
            saved_settings = json.load(f)
    except (OSError, ValueError) as e:
        if strict:
            raise
        logger.warning(f"⚠️ Error loading settings from {settings_file}: {e}")
        return settings

    if not isinstance(saved_settings, dict):
        if strict:
            raise ValueError(f"settings file {settings_file} is not a JSON object")
        logger.warning(f"⚠️ Settings file {settings_file} is not a JSON object, using defaults")
        return settings

    for key, value in saved_settings.items():
        if key not in DEFAULT_SETTINGS:
            logger.warning(f"⚠️ Ignoring unknown setting '{key}'")
            continue
        expected = type(DEFAULT_SETTINGS[key])
        if expected is bool and not isinstance(value, bool):
            logger.warning(f"⚠️ Setting '{key}' must be true or false, got {value!r}")
            continue
        try:
            settings[key] = expected(value)
        except (TypeError, ValueError):
            logger.warning(f"⚠️ Setting '{key}' has invalid value {value!r}, keeping default")
    return settings


def save_settings(settings, settings_file=None):
    """Save settings as indented JSON; returns True on success"""
    if settings_file is None:
        settings_file = get_app_dirs()['settings']
    try:
        with open(settings_file, 'w', encoding='utf-8') as f:
            json.dump(settings, f, indent=2)
        return True
    except OSError as e:
        logger.warning(f"⚠️ Error saving settings: {e}")
        return False
