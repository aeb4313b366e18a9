import importlib
import logging

import pytest

from configs import logger as log_config
from configs import settings


@pytest.fixture
def reload_settings(monkeypatch):
    yield lambda: importlib.reload(settings)
    monkeypatch.undo()
    importlib.reload(settings)


def test_environment_overrides(monkeypatch, reload_settings):
    monkeypatch.setenv("TDPAIR_THREADS", "3")
    monkeypatch.setenv("TDPAIR_LOG_LEVEL", "debug")
    monkeypatch.setenv("TDPAIR_DEFAULT_BETA", "0")
    reloaded = reload_settings()
    assert reloaded.THREADS == 3
    assert reloaded.LOG_LEVEL == "DEBUG"
    assert reloaded.DEFAULT_BETA == "0"


@pytest.mark.parametrize(
    "name, value",
    [
        ("TDPAIR_THREADS", "0"),
        ("TDPAIR_THREADS", "many"),
        ("TDPAIR_LOG_LEVEL", "loud"),
        ("TDPAIR_WORD_CAP_FACTOR", "-1"),
    ],
)
def test_malformed_values(monkeypatch, reload_settings, name, value):
    monkeypatch.setenv(name, value)
    with pytest.raises(ValueError):
        reload_settings()


def test_setup_logging_sets_root_level(monkeypatch):
    root = logging.getLogger()
    monkeypatch.setattr(root, "handlers", [])
    monkeypatch.setattr(root, "level", logging.WARNING)
    log_config.setup_logging("info")
    assert root.level == logging.INFO
