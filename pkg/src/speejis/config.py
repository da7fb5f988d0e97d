"""Service and CLI configuration, resolved from environment and flags.

Environment variables (flags override them where both exist):

    SPEEJI_DATA_DIR      persistence root (default ./speeji-data)
    SPEEJI_SER_BACKEND   baseline | external (default baseline)
    SPEEJI_SER_URL       external emotion model base URL
    SPEEJI_ASR_URL       external transcription base URL (optional)
    SPEEJI_EMOJI_TABLE   path to an emoji table JSON file (default: built-in)
    SPEEJI_PORT          service port (default 8076)
    SPEEJI_NEUTRAL_TAU   neutrality threshold (default 0.15)
    SPEEJI_INTEREST_TAU  interest threshold (default 0.35)
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

from .backends import BackendConfig, BaselineBackend, ExternalSerBackend, ExternalTranscriber
from .emotion import DEFAULT_INTEREST_TAU, DEFAULT_NEUTRAL_TAU, EmojiTable, default_table, load_table
from .errors import ConfigError
from .pipeline import PipelineConfig

DEFAULT_PORT = 8076
DEFAULT_WORKERS = 4


@dataclass
class ServiceConfig:
    data_dir: Path = Path("speeji-data")
    ser_backend: str = "baseline"
    ser_url: str | None = None
    asr_url: str | None = None
    emoji_table_path: Path | None = None
    host: str = "127.0.0.1"
    port: int = DEFAULT_PORT
    neutral_tau: float = DEFAULT_NEUTRAL_TAU
    interest_tau: float = DEFAULT_INTEREST_TAU
    workers: int = DEFAULT_WORKERS
    static_dir: Path | None = None
    backend_timeout_s: float = 30.0
    backend_retry_count: int = 1

    def validate(self) -> None:
        if self.ser_backend not in ("baseline", "external"):
            raise ConfigError(f"SPEEJI_SER_BACKEND must be baseline or external, got {self.ser_backend!r}")
        if self.ser_backend == "external" and not self.ser_url:
            raise ConfigError("external backend selected but SPEEJI_SER_URL is not set")
        if not (0.0 <= self.neutral_tau < 1.0):
            raise ConfigError(f"neutral tau {self.neutral_tau} outside [0, 1)")
        if not (0.0 <= self.interest_tau <= 1.5):
            raise ConfigError(f"interest tau {self.interest_tau} out of range")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")


def config_from_env(env: Mapping[str, str] | None = None) -> ServiceConfig:
    env = os.environ if env is None else env
    cfg = ServiceConfig()
    if env.get("SPEEJI_DATA_DIR"):
        cfg.data_dir = Path(env["SPEEJI_DATA_DIR"])
    if env.get("SPEEJI_SER_BACKEND"):
        cfg.ser_backend = env["SPEEJI_SER_BACKEND"]
    if env.get("SPEEJI_SER_URL"):
        cfg.ser_url = env["SPEEJI_SER_URL"]
    if env.get("SPEEJI_ASR_URL"):
        cfg.asr_url = env["SPEEJI_ASR_URL"]
    if env.get("SPEEJI_EMOJI_TABLE"):
        cfg.emoji_table_path = Path(env["SPEEJI_EMOJI_TABLE"])
    if env.get("SPEEJI_PORT"):
        try:
            cfg.port = int(env["SPEEJI_PORT"])
        except ValueError as exc:
            raise ConfigError(f"SPEEJI_PORT is not an integer: {env['SPEEJI_PORT']!r}") from exc
    for var, attr in (("SPEEJI_NEUTRAL_TAU", "neutral_tau"), ("SPEEJI_INTEREST_TAU", "interest_tau")):
        if env.get(var):
            try:
                setattr(cfg, attr, float(env[var]))
            except ValueError as exc:
                raise ConfigError(f"{var} is not a number: {env[var]!r}") from exc
    return cfg


def resolve_table(cfg: ServiceConfig) -> EmojiTable:
    if cfg.emoji_table_path is not None:
        return load_table(cfg.emoji_table_path)
    return default_table()


def build_pipeline_config(cfg: ServiceConfig) -> PipelineConfig:
    cfg.validate()
    if cfg.ser_backend == "external":
        ser = ExternalSerBackend(
            BackendConfig(
                kind="external",
                endpoint_url=cfg.ser_url,
                timeout_s=cfg.backend_timeout_s,
                retry_count=cfg.backend_retry_count,
            )
        )
    else:
        ser = BaselineBackend()
    transcriber = None
    if cfg.asr_url:
        transcriber = ExternalTranscriber(
            BackendConfig(
                kind="external",
                endpoint_url=cfg.asr_url,
                timeout_s=cfg.backend_timeout_s,
                retry_count=cfg.backend_retry_count,
            )
        )
    return PipelineConfig(
        ser=ser,
        transcriber=transcriber,
        neutral_tau=cfg.neutral_tau,
        interest_tau=cfg.interest_tau,
    )
