import json
from pathlib import Path

import pytest

from src.exceptions import ConfigurationError
from src.scattering.model import JumpVariant
from src.utils.config import Settings, get_settings, load_settings, reset_settings_cache


def test_defaults():
    settings = load_settings()
    assert settings.energy == 2.0
    assert settings.variant is JumpVariant.DERIVED
    assert settings.output_format == "csv"
    assert settings.output_directory == Path("./output")


def test_environment_is_ignored(monkeypatch):
    monkeypatch.setenv("ENERGY", "9.0")
    monkeypatch.setenv("LOG_LEVEL", "DEBUG")
    settings = Settings()
    assert settings.energy == 2.0
    assert settings.log_level == "INFO"


def test_load_from_json(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"va": 0.5, "variant": "printed", "steps": 400}), encoding="utf-8")
    settings = load_settings(path)
    assert settings.va == 0.5
    assert settings.variant is JumpVariant.PRINTED
    assert settings.steps == 400


@pytest.mark.parametrize(
    "content",
    ["{not json", "[1, 2]", json.dumps({"unknown": 1}), json.dumps({"steps": 0})],
)
def test_bad_config_files(tmp_path, content):
    path = tmp_path / "config.json"
    path.write_text(content, encoding="utf-8")
    with pytest.raises(ConfigurationError):
        load_settings(path)


def test_missing_config_file(tmp_path):
    with pytest.raises(ConfigurationError):
        load_settings(tmp_path / "absent.json")


def test_settings_are_cached():
    reset_settings_cache()
    assert get_settings() is get_settings()
    reset_settings_cache()
