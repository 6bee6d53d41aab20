"""Run configuration with flags > environment > config file > defaults."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, fields
from pathlib import Path

from .errors import DomainError

ENV_PREFIX = "GLAB_"
OUTPUT_FORMATS = ("csv", "json")


def default_cache_dir() -> Path:
    base = os.environ.get("XDG_CACHE_HOME", os.path.join(os.path.expanduser("~"), ".cache"))
    return Path(base) / "glab"


@dataclass
class RunConfig:
    sieve_limit: int = 100_000
    zeros_source: str = "builtin"
    cache_dir: Path = None  # type: ignore[assignment]
    output_format: str = "csv"
    threads: int = 0
    chunk_size: int = 4096

    def __post_init__(self):
        if self.cache_dir is None:
            self.cache_dir = default_cache_dir()
        self.cache_dir = Path(self.cache_dir)

    def validate(self) -> "RunConfig":
        if self.sieve_limit < 16:
            raise DomainError(f"sieve limit must be >= 16, got {self.sieve_limit}")
        if self.chunk_size < 1 or self.chunk_size & (self.chunk_size - 1):
            raise DomainError(f"chunk size must be a power of two, got {self.chunk_size}")
        if self.output_format not in OUTPUT_FORMATS:
            raise DomainError(f"output format must be one of {OUTPUT_FORMATS}")
        if self.threads < 0:
            raise DomainError("thread count must be >= 0 (0 = auto)")
        return self

    def effective_threads(self) -> int:
        return self.threads if self.threads > 0 else (os.cpu_count() or 1)


_INT_FIELDS = {"sieve_limit", "threads", "chunk_size"}


def load_config(
    overrides: dict | None = None,
    *,
    config_path: str | Path | None = None,
    env: dict | None = None,
) -> RunConfig:
    """Merge the precedence chain into a validated RunConfig.

    ``overrides`` holds flag values (None entries ignored); environment
    variables use the GLAB_ prefix with upper-cased field names.
    """
    env = os.environ if env is None else env
    merged: dict = {}
    if config_path is not None:
        try:
            merged.update(json.loads(Path(config_path).read_text()))
        except (OSError, json.JSONDecodeError) as exc:
            raise DomainError(f"cannot read config file {config_path}: {exc}") from exc
    for f in fields(RunConfig):
        key = ENV_PREFIX + f.name.upper()
        if key in env:
            merged[f.name] = env[key]
    if overrides:
        merged.update({k: v for k, v in overrides.items() if v is not None})

    known = {f.name for f in fields(RunConfig)}
    unknown = set(merged) - known
    if unknown:
        raise DomainError(f"unknown config keys: {sorted(unknown)}")
    for key in _INT_FIELDS & set(merged):
        try:
            merged[key] = int(merged[key])
        except (TypeError, ValueError) as exc:
            raise DomainError(f"config key {key} must be an integer") from exc
    return RunConfig(**merged).validate()
