"""Configuración y lectura de variables de entorno para el compositor."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Any

from dotenv import load_dotenv

from utils.helpers import get_env

load_dotenv()


def _env_bool(key: str, default: bool) -> bool:
    raw = get_env(key)
    if raw is None:
        return default
    return str(raw).strip().lower() in ("1", "true", "yes", "si", "sí", "on")


def _env_int(key: str, default: int) -> int:
    raw = get_env(key)
    if raw is None or not str(raw).strip():
        return default
    return int(str(raw).strip())


# =========================
# Config
# =========================
@dataclass(frozen=True)
class CompositorConfig:
    max_sample_magnitude: int = 10**15
    max_refutation_degree: int = 9
    max_stream_scan: int = 100_000
    progress: bool = False
    log_level: str = "WARNING"

    @classmethod
    def from_env(cls) -> "CompositorConfig":
        base = cls()
        return cls(
            max_sample_magnitude=_env_int("COMPOSITOR_MAX_MAGNITUDE", base.max_sample_magnitude),
            max_refutation_degree=_env_int("COMPOSITOR_MAX_DEGREE", base.max_refutation_degree),
            max_stream_scan=_env_int("COMPOSITOR_MAX_SCAN", base.max_stream_scan),
            progress=_env_bool("COMPOSITOR_PROGRESS", base.progress),
            log_level=str(get_env("COMPOSITOR_LOG_LEVEL", base.log_level)).upper(),
        )

    def with_overrides(self, **changes: Any) -> "CompositorConfig":
        """Copia con los valores no nulos de `changes` (flags de la CLI)."""
        return replace(self, **{k: v for k, v in changes.items() if v is not None})
