"""Tests for loading and saving JSON settings"""

import json
import logging

import pytest

from utils.constants import DEFAULT_SETTINGS
from utils.settings import load_settings, save_settings


def write(tmp_path, payload):
    path = tmp_path / 'settings.json'
    path.write_text(payload if isinstance(payload, str) else json.dumps(payload))
    return str(path)


def test_missing_keys_fall_back_to_defaults(tmp_path):
    settings = load_settings(write(tmp_path, {'workers': 4}))
    assert settings['workers'] == 4
    assert settings['certificate_tolerance'] == DEFAULT_SETTINGS['certificate_tolerance']


def test_values_are_cast_to_default_types(tmp_path):
    settings = load_settings(write(tmp_path, {'quadrature_tolerance': 1, 'quadrature_max_depth': 30.0}))
    assert settings['quadrature_tolerance'] == 1.0 and isinstance(settings['quadrature_tolerance'], float)
    assert settings['quadrature_max_depth'] == 30 and isinstance(settings['quadrature_max_depth'], int)


def test_bad_values_keep_defaults(tmp_path, caplog):
    with caplog.at_level(logging.WARNING):
        settings = load_settings(write(tmp_path, {'workers': 'many', 'verbose': 'yes'}))
    assert settings['workers'] == DEFAULT_SETTINGS['workers']
    assert settings['verbose'] is False
    assert "workers" in caplog.text and "verbose" in caplog.text


def test_unknown_key_is_ignored(tmp_path, caplog):
    with caplog.at_level(logging.WARNING):
        settings = load_settings(write(tmp_path, {'theme': 'dark'}))
    assert 'theme' not in settings
    assert "theme" in caplog.text


def test_malformed_file(tmp_path, caplog):
    with caplog.at_level(logging.WARNING):
        assert load_settings(write(tmp_path, "{not json")) == DEFAULT_SETTINGS
        assert load_settings(write(tmp_path, [1, 2])) == DEFAULT_SETTINGS
    assert "not a JSON object" in caplog.text


def test_strict_raises_on_bad_file(tmp_path):
    with pytest.raises(OSError):
        load_settings(str(tmp_path / 'missing.json'), strict=True)
    with pytest.raises(ValueError):
        load_settings(write(tmp_path, "{not json"), strict=True)
    with pytest.raises(ValueError, match="not a JSON object"):
        load_settings(write(tmp_path, [1, 2]), strict=True)


def test_save_then_load(tmp_path):
    path = str(tmp_path / 'saved.json')
    settings = dict(DEFAULT_SETTINGS, workers=2, verbose=True)
    assert save_settings(settings, path) is True
    assert load_settings(path) == settings


def test_save_failure(tmp_path, caplog):
    with caplog.at_level(logging.WARNING):
        assert save_settings(DEFAULT_SETTINGS, str(tmp_path / 'missing' / 'settings.json')) is False
