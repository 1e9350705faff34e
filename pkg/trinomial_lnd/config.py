import os
from dataclasses import dataclass, fields, replace
from typing import Any

from trinomial_lnd.errors import ConfigError

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def _int_from_env(name: str, default: int, minimum: int = 0) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}")
    if value < minimum:
        raise ConfigError(f"{name} must be >= {minimum}, got {value}")
    return value


@dataclass(frozen=True)
class EngineConfig:
    """Engine configuration."""

    # Search and verification limits
    nilpotency_cap: int = 50  # Max powers tried by bounded_nilpotency
    oracle_cap: int = 6  # Total-degree bound on derivation images in the oracle
    oracle_samples: int = 20  # Random combinations per derivation space
    seed: int = 0  # Seed for the oracle's random combinations

    # Diagnostics
    log_level: str = "WARNING"

    # Server configuration
    server_name: str = "Trinomial LND"

    def __post_init__(self):
        if self.nilpotency_cap < 1:
            raise ConfigError(f"nilpotency_cap must be >= 1, got {self.nilpotency_cap}")
        if self.oracle_cap < 0:
            raise ConfigError(f"oracle_cap must be >= 0, got {self.oracle_cap}")
        if self.oracle_samples < 0:
            raise ConfigError(f"oracle_samples must be >= 0, got {self.oracle_samples}")
        if self.log_level.upper() not in LOG_LEVELS:
            raise ConfigError(f"log_level must be one of {', '.join(LOG_LEVELS)}, got {self.log_level!r}")

    @classmethod
    def from_env(cls) -> "EngineConfig":
        """Create configuration from environment variables."""
        return cls(
            nilpotency_cap=_int_from_env("TRINOMIAL_NILPOTENCY_CAP", 50, minimum=1),
            oracle_cap=_int_from_env("TRINOMIAL_ORACLE_CAP", 6),
            oracle_samples=_int_from_env("TRINOMIAL_ORACLE_SAMPLES", 20),
            seed=_int_from_env("TRINOMIAL_SEED", 0),
            log_level=os.getenv("TRINOMIAL_LOG_LEVEL", "WARNING").upper(),
            server_name=os.getenv("TRINOMIAL_SERVER_NAME", "Trinomial LND"),
        )

    def with_overrides(self, **settings: Any) -> "EngineConfig":
        """Return a copy with every non-None setting applied."""
        known = {f.name for f in fields(self)}
        unknown = set(settings) - known
        if unknown:
            raise ConfigError(f"unknown settings: {', '.join(sorted(unknown))}")
        return replace(self, **{k: v for k, v in settings.items() if v is not None})
