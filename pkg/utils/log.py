# -*- coding: utf-8 -*-
"""Logger con salida rich por stderr."""

from __future__ import annotations

import logging
import sys

from rich.console import Console
from rich.logging import RichHandler

from utils.helpers import get_env

_ROOT = "compositor"
_configured = False


def _configure(level: str) -> None:
    global _configured
    handler = RichHandler(
        console=Console(file=sys.stderr),
        show_path=False,
        markup=False,
        rich_tracebacks=False,
    )
    root = logging.getLogger(_ROOT)
    root.handlers[:] = [handler]
    root.setLevel(level)
    root.propagate = False
    _configured = True


def get_logger(name: str) -> logging.Logger:
    """Logger hijo de `compositor` (configurado la primera vez)."""
    if not _configured:
        _configure(str(get_env("COMPOSITOR_LOG_LEVEL", "WARNING")).upper())
    short = name.split(".")[-1]
    return logging.getLogger(f"{_ROOT}.{short}")


def set_level(level: str) -> None:
    if not _configured:
        _configure(level.upper())
    logging.getLogger(_ROOT).setLevel(level.upper())
