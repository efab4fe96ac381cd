import pytest
from pydantic import ValidationError

from config import SETTINGS_ENV_VAR, SETTINGS_FILE, Settings, get_settings, load_settings


def test_default_file():
    assert SETTINGS_FILE.exists()
    settings = load_settings(SETTINGS_FILE)
    assert settings.tensor_dimension_limit == 1_000_000
    assert settings.default_format == "json"


def test_missing_file_gives_defaults(tmp_path):
    assert load_settings(tmp_path / "absent.yaml") == Settings()


def test_partial_file(tmp_path):
    path = tmp_path / "settings.yaml"
    path.write_text("spot_checks: 3\nlog_level: DEBUG\n")
    settings = load_settings(path)
    assert settings.spot_checks == 3
    assert settings.log_level == "DEBUG"
    assert settings.random_seed == 42


def test_invalid_value(tmp_path):
    path = tmp_path / "settings.yaml"
    path.write_text("default_format: xml\n")
    with pytest.raises(ValidationError):
        load_settings(path)


def test_environment_override(tmp_path, monkeypatch):
    path = tmp_path / "settings.yaml"
    path.write_text("random_seed: 7\n")
    monkeypatch.setenv(SETTINGS_ENV_VAR, str(path))
    assert load_settings().random_seed == 7


def test_get_settings_cached():
    assert get_settings() is get_settings()
