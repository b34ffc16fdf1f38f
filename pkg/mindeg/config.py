"""Engine configuration.

Every tunable of the engine lives on ``EngineConfig``. Values come from
defaults, then the ``MINDEG_SEED`` environment variable, then explicit
overrides (CLI flags or campaign rows).
"""

from __future__ import annotations

import os
from typing import Any

from pydantic import BaseModel, Field, ValidationError, field_validator

from mindeg.exceptions import ConfigError

DEFAULT_MAX_ORDER = 20_000
DEFAULT_LATTICE_CAP = 1_000
NAIVE_CAP = 24
SEED_ENV = "MINDEG_SEED"


class EngineConfig(BaseModel):
    model_config = {"frozen": True}

    max_order: int = Field(DEFAULT_MAX_ORDER, ge=1)
    lattice_cap: int = Field(DEFAULT_LATTICE_CAP, ge=1)
    naive_cap: int = Field(NAIVE_CAP, ge=1)
    seed: int = 0
    budget_seconds: float | None = Field(None, gt=0)
    parallel: int = Field(1, ge=1)

    @field_validator("naive_cap")
    @classmethod
    def _naive_cap_is_hard(cls, value: int) -> int:
        if value > NAIVE_CAP:
            raise ValueError(f"naive_cap cannot exceed {NAIVE_CAP}")
        return value

    @classmethod
    def from_env(cls, **overrides: Any) -> EngineConfig:
        """Build a config from ``MINDEG_SEED`` plus non-None overrides."""
        values: dict[str, Any] = {}
        raw_seed = os.environ.get(SEED_ENV)
        if raw_seed:
            try:
                values["seed"] = int(raw_seed)
            except ValueError:
                raise ConfigError(f"{SEED_ENV} must be an integer, got {raw_seed!r}")
        values.update({k: v for k, v in overrides.items() if v is not None})
        try:
            return cls(**values)
        except ValidationError as e:
            raise ConfigError(str(e)) from e

    def with_overrides(self, **overrides: Any) -> EngineConfig:
        """Return a copy with the non-None overrides applied."""
        values = self.model_dump()
        values.update({k: v for k, v in overrides.items() if v is not None})
        try:
            return EngineConfig(**values)
        except ValidationError as e:
            raise ConfigError(str(e)) from e

    def snapshot(self) -> dict[str, Any]:
        """JSON-safe dict recorded in certificates."""
        return self.model_dump(exclude={"parallel"})
