#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
helpers.py — utilidades generales
---------------------------------
• Variables de entorno
• Lectura de ficheros de especificación (YAML / JSON)
• JSON canónico y hashes de contenido
"""

import hashlib
import json
import os
from pathlib import Path
from typing import Any, Union

import yaml

PathLike = Union[str, Path]

# ==============================================================
# 🧩 FUNCIONES GENÉRICAS
# ==============================================================

def get_env(key: str, default: Any = None) -> Any:
    """Leer una variable de entorno y devolver un valor por defecto si no existe."""
    return os.getenv(key, default)


def load_structured(path: PathLike) -> Any:
    """Cargar un fichero YAML o JSON (JSON es YAML válido). Lanza FileNotFoundError si no existe."""
    p = Path(path)
    if not p.exists():
        raise FileNotFoundError(f"No existe {p}")
    with p.open("r", encoding="utf8") as f:
        return yaml.safe_load(f)


def save_bytes(path: PathLike, data: bytes) -> None:
    """Guardar bytes (crea directorios si hace falta)."""
    p = Path(path)
    if p.parent and str(p.parent) not in ("", "."):
        p.parent.mkdir(parents=True, exist_ok=True)
    p.write_bytes(data)


def load_bytes(path: PathLike) -> bytes:
    p = Path(path)
    if not p.exists():
        raise FileNotFoundError(f"No existe {p}")
    return p.read_bytes()


# ==============================================================
# 🔐 JSON CANÓNICO Y HASHES
# ==============================================================

def canonical_json(data: Any) -> str:
    """JSON determinista: claves ordenadas, UTF-8 sin escapar, indentado a 2."""
    return json.dumps(data, ensure_ascii=False, sort_keys=True, indent=2)


def sha1_text(s: str) -> str:
    return hashlib.sha1(s.encode("utf-8")).hexdigest()
