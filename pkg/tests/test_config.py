import pytest

from trinomial_lnd.config import EngineConfig
from trinomial_lnd.errors import ConfigError

ENV_VARS = (
    "TRINOMIAL_NILPOTENCY_CAP",
    "TRINOMIAL_ORACLE_CAP",
    "TRINOMIAL_ORACLE_SAMPLES",
    "TRINOMIAL_SEED",
    "TRINOMIAL_LOG_LEVEL",
    "TRINOMIAL_SERVER_NAME",
)


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in ENV_VARS:
        monkeypatch.delenv(name, raising=False)


def test_defaults():
    assert EngineConfig.from_env() == EngineConfig()
    config = EngineConfig()
    assert config.nilpotency_cap == 50
    assert config.log_level == "WARNING"


def test_from_env(monkeypatch):
    monkeypatch.setenv("TRINOMIAL_NILPOTENCY_CAP", "7")
    monkeypatch.setenv("TRINOMIAL_SEED", "42")
    monkeypatch.setenv("TRINOMIAL_LOG_LEVEL", "debug")
    monkeypatch.setenv("TRINOMIAL_ORACLE_CAP", " ")
    config = EngineConfig.from_env()
    assert config.nilpotency_cap == 7
    assert config.seed == 42
    assert config.log_level == "DEBUG"
    assert config.oracle_cap == 6


@pytest.mark.parametrize(
    "name, value, message",
    [
        ("TRINOMIAL_NILPOTENCY_CAP", "many", "TRINOMIAL_NILPOTENCY_CAP must be an integer"),
        ("TRINOMIAL_NILPOTENCY_CAP", "0", "TRINOMIAL_NILPOTENCY_CAP must be >= 1"),
        ("TRINOMIAL_ORACLE_SAMPLES", "-1", "TRINOMIAL_ORACLE_SAMPLES must be >= 0"),
        ("TRINOMIAL_LOG_LEVEL", "chatty", "log_level must be one of"),
    ],
)
def test_invalid_environment(monkeypatch, name, value, message):
    monkeypatch.setenv(name, value)
    with pytest.raises(ConfigError, match=message):
        EngineConfig.from_env()


def test_with_overrides():
    config = EngineConfig(seed=1)
    updated = config.with_overrides(seed=3, oracle_cap=None)
    assert updated.seed == 3
    assert updated.oracle_cap == config.oracle_cap
    assert config.seed == 1


def test_override_validation():
    with pytest.raises(ConfigError, match="unknown settings: colour"):
        EngineConfig().with_overrides(colour=3)
    with pytest.raises(ConfigError):
        EngineConfig().with_overrides(nilpotency_cap=0)
