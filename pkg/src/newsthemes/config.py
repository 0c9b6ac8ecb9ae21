"""Engine configuration: one flat record, JSON file loading, strict keys."""

from __future__ import annotations

import json
from dataclasses import dataclass, fields
from typing import Any

from .embed import EmbedderConfig


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class EngineConfig:
    port: int = 8000
    embedding_dimension: int = 128
    embedding_mode: str = "deterministic-projection"
    matrix_path: str | None = None
    embedding_seed: int = 0
    headline_weight: int = 3
    theta_online: float = 0.80
    theta_hac: float = 0.75
    online_window_seconds: int = 604800
    k_facets: int = 50
    n_stories: int = 20
    max_themes: int = 5
    p_subclusters: int = 3
    max_body_sentences: int = 3
    default_horizon_seconds: int = 86400
    ttl_seconds: int = 1800
    priming_seconds: int = 86400
    refresh_interval_seconds: int = 1800
    journal_path: str | None = None
    feedback_path: str | None = None
    popular_keys_path: str | None = None
    model_path: str | None = None

    def __post_init__(self) -> None:
        if not 1 <= self.port <= 65535:
            raise ConfigError(f"port must be in [1, 65535], got {self.port}")
        for name in ("theta_online", "theta_hac"):
            value = getattr(self, name)
            if not 0.0 < value <= 1.0:
                raise ConfigError(f"{name} must be in (0, 1], got {value}")
        positive = (
            "online_window_seconds",
            "k_facets",
            "n_stories",
            "max_themes",
            "p_subclusters",
            "default_horizon_seconds",
            "ttl_seconds",
            "priming_seconds",
            "refresh_interval_seconds",
        )
        for name in positive:
            value = getattr(self, name)
            if value <= 0:
                raise ConfigError(f"{name} must be positive, got {value}")
        if self.max_body_sentences < 0:
            raise ConfigError(
                f"max_body_sentences must be >= 0, got {self.max_body_sentences}"
            )
        try:
            self.embedder_config()
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def embedder_config(self) -> EmbedderConfig:
        return EmbedderConfig(
            dimension=self.embedding_dimension,
            mode=self.embedding_mode,
            matrix_path=self.matrix_path,
            seed=self.embedding_seed,
            headline_weight=self.headline_weight,
        )


def load_config(path: str) -> EngineConfig:
    """Load a JSON config file; unknown keys are an error, not a warning."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            raw: Any = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid config JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config file must hold a JSON object")
    known = {f.name for f in fields(EngineConfig)}
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    try:
        return EngineConfig(**raw)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc
