import logging

import pytest

from extrank.config import Settings, configure_logging, get_settings, use_settings
from extrank.errors import ConfigError


def test_defaults():
    settings = Settings()
    assert settings.enumeration_cap == 20
    assert settings.cope_cap == 12
    assert settings.tie_tolerance == 1e-7


def test_environment(monkeypatch):
    monkeypatch.setenv("EXTRANK_ENUM_CAP", "9")
    monkeypatch.setenv("EXTRANK_CAT_TOLERANCE", "1e-6")
    monkeypatch.setenv("EXTRANK_SEED", " ")
    settings = Settings.from_env()
    assert settings.enumeration_cap == 9
    assert settings.cat_tolerance == 1e-6
    assert settings.seed == 0


@pytest.mark.parametrize("name, value", [("EXTRANK_ENUM_CAP", "many"), ("EXTRANK_COPE_CAP", "-1")])
def test_invalid_environment(monkeypatch, name, value):
    monkeypatch.setenv(name, value)
    with pytest.raises(ConfigError):
        Settings.from_env()


def test_overrides_skip_none():
    base = Settings()
    assert base.with_overrides(cope_cap=None) is base
    changed = base.with_overrides(cope_cap=4, seed=None)
    assert changed.cope_cap == 4
    assert changed.seed == base.seed
    with pytest.raises(ConfigError):
        base.with_overrides(sample_pairs=0)


def test_use_settings():
    custom = Settings(seed=42)
    use_settings(custom)
    assert get_settings() is custom
    use_settings(None)
    assert get_settings() is not custom


def test_configure_logging():
    configure_logging("debug")
    assert logging.getLogger("extrank").level == logging.DEBUG
    with pytest.raises(ConfigError):
        configure_logging("loud")


def test_numerics_track_score_knobs():
    base = Settings()
    assert base.with_overrides(seed=7).numerics == base.numerics
    assert base.with_overrides(cat_tolerance=1e-4).numerics != base.numerics
    assert base.with_overrides(tie_tolerance=0.1).numerics != base.numerics
