import pytest
from pydantic import ValidationError

from config import Settings
from models import FormId


def test_defaults():
    settings = Settings()
    assert settings.n_max == 8
    assert settings.min_overlap == 5
    assert settings.precision is None
    assert settings.required_precision == 33
    assert settings.default_precision == 33


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("NHOLO_PRECISION", "40")
    monkeypatch.setenv("NHOLO_N_MAX", "4")
    settings = Settings()
    assert settings.n_max == 4
    assert settings.required_precision == 17
    assert settings.default_precision == 40


def test_env_file_is_read(tmp_path):
    env_file = tmp_path / "custom.env"
    env_file.write_text("NHOLO_MAX_TOTAL_WEIGHT=20\nNHOLO_WORKERS=3\n")
    settings = Settings(_env_file=env_file)
    assert settings.max_total_weight == 20
    assert settings.workers == 3


def test_search_config_prefers_explicit_values():
    config = Settings().search_config(max_total_weight=14, n_max=None, pool=[FormId.parse("E4")])
    assert config.max_total_weight == 14
    assert config.n_max == 8
    assert config.precision == 33
    assert [str(form_id) for form_id in config.pool] == ["E4"]


def test_search_config_rejects_low_precision(monkeypatch):
    monkeypatch.setenv("NHOLO_PRECISION", "12")
    with pytest.raises(ValidationError):
        Settings().search_config()


def test_invalid_environment_value(monkeypatch):
    monkeypatch.setenv("NHOLO_N_MAX", "many")
    with pytest.raises(ValidationError):
        Settings()
