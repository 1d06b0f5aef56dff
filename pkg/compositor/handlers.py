#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
handlers.py — comandos de la CLI
--------------------------------
Cada cmd_* ejecuta un trabajo completo, escribe el informe y devuelve el
código de salida:

    0  éxito (PASS, Fitted, todas las refutaciones, replay reproducido)
    1  resultado negativo, índice fuera de rango o replay que no se reproduce
    2  especificación no válida, clase desconocida o digest que no coincide
    3  error de E/S o límite de recursos
"""

from __future__ import annotations

import functools
import sys
from pathlib import Path
from typing import Any, Callable, Dict, Optional

from rich.console import Console

from compositor import texts
from compositor.certlib import (
    CertificateRecord,
    ReportBundle,
    TableRecord,
    bundle_digest,
    canonical_spec,
    deserialize_bundle,
    entry_to_json,
    new_bundle,
    replay_bundle,
    serialize_bundle,
)
from compositor.config import CompositorConfig
from compositor.encoder import (
    EncodingVariant,
    TermStream,
    encode,
    enumerate_table,
    materialize_table,
    verify_homomorphism,
)
from compositor.errors import (
    CompositorError,
    DigestMismatchError,
    MissingMeaningError,
    OutOfRangeError,
    ResourceLimitError,
    SpecError,
)
from compositor.grammars import Grammar, numeral_meaning_function, numeral_stream
from compositor.specs import (
    build_language,
    build_samples,
    load_spec,
    refutation_settings,
    samples_settings,
    spec_kind,
)
from compositor.systematicity import (
    BoolFunOfProjections,
    PolyTwoVar,
    check_functional_dependence,
    degree_interval_samples,
    fit_polynomial,
    fit_polynomial_with_budget,
    is_fitted,
    is_refutation,
    refute_polynomial_all_degrees,
    verify_certificate,
)
from compositor.term import render_term
from utils.helpers import canonical_json, load_bytes, save_bytes
from utils.log import get_logger, set_level
from utils.report_formatter import ReportFormatter

log = get_logger(__name__)

EXIT_OK, EXIT_NEGATIVE, EXIT_INVALID, EXIT_IO = 0, 1, 2, 3

_stdout = Console()
_stderr = Console(stderr=True)


# =========================
# Frontera de errores
# =========================
def guarded(fn: Callable[..., int]) -> Callable[..., int]:
    """Traduce las excepciones del dominio al contrato de códigos de salida."""

    @functools.wraps(fn)
    def wrapper(*args: Any, **kwargs: Any) -> int:
        try:
            return fn(*args, **kwargs)
        except DigestMismatchError as e:
            _stderr.print(texts.ERROR_DIGEST.format(error=e), markup=False)
            return EXIT_INVALID
        except OutOfRangeError as e:
            _stderr.print(texts.ERROR_OUT_OF_RANGE.format(error=e), markup=False)
            return EXIT_NEGATIVE
        except ResourceLimitError as e:
            _stderr.print(texts.ERROR_RESOURCE.format(error=e), markup=False)
            return EXIT_IO
        except CompositorError as e:
            _stderr.print(texts.ERROR_INVALID.format(error=e), markup=False)
            return EXIT_INVALID
        except OSError as e:
            _stderr.print(texts.ERROR_IO.format(error=e), markup=False)
            return EXIT_IO

    return wrapper


def _config(progress: Optional[bool] = None) -> CompositorConfig:
    config = CompositorConfig.from_env().with_overrides(progress=progress or None)
    set_level(config.log_level)
    return config


def _emit(bundle: ReportBundle, out: Optional[str], fmt: str) -> None:
    data = serialize_bundle(bundle)
    if out:
        save_bytes(out, data)
        log.info(texts.BUNDLE_WRITTEN.format(path=out, digest=bundle_digest(bundle)))
    if fmt == "machine":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
        return
    _stdout.print(ReportFormatter.bundle_to_text(bundle), markup=False)
    for item in bundle.items:
        if isinstance(item, TableRecord):
            _stdout.print(ReportFormatter.table_to_rich(item.table))


def _subject(raw: Dict[str, Any], path: Optional[str], default: str) -> str:
    if raw.get("name"):
        return str(raw["name"])
    return Path(path).stem if path else default


# =========================
# encode
# =========================
@guarded
def cmd_encode(spec_path: str, variant: Optional[str] = None, table: bool = False,
               out: Optional[str] = None, fmt: str = "human") -> int:
    """μ + verificación exhaustiva (+ tabla explícita con --table). 0 si PASS."""
    _config()
    raw = load_spec(spec_path)
    if spec_kind(raw) != "language":
        raise SpecError(f"{spec_path} no es una especificación de lenguaje")
    spec = canonical_spec(raw, "language", {"variant": variant})
    job = build_language(spec)
    session = encode(job.fragment, job.meanings, job.variant)
    report = verify_homomorphism(session)
    items: list = [report]
    if table:
        items.append(TableRecord(job.fragment.name, materialize_table(session)))
    _emit(new_bundle(spec, items), out, fmt)
    return EXIT_OK if report.passed else EXIT_NEGATIVE


# =========================
# fit
# =========================
@guarded
def cmd_fit(samples_path: str, cls: Optional[str] = None, degree: Optional[int] = None,
            budget: Optional[int] = None, out: Optional[str] = None, fmt: str = "human") -> int:
    """Ajuste en la clase pedida. 0 si Fitted, 1 si refutado o indeterminado."""
    _config()
    raw = load_spec(samples_path)
    if spec_kind(raw) != "samples":
        raise SpecError(f"{samples_path} no es un fichero de muestras")
    spec = canonical_spec(raw, "samples", {"class": cls, "degree": degree, "budget": budget})
    settings = samples_settings(spec)
    samples = build_samples(spec)

    if settings.function_class == "boolfun":
        cert = check_functional_dependence(samples, BoolFunOfProjections(len(samples[0].args)))
    elif settings.budget is not None:
        cert = fit_polynomial_with_budget(samples, PolyTwoVar(settings.degree), settings.budget)
    else:
        cert = fit_polynomial(samples, PolyTwoVar(settings.degree))

    subject = _subject(raw, samples_path, "samples")
    _emit(new_bundle(spec, [CertificateRecord(subject, cert)]), out, fmt)
    return EXIT_OK if is_fitted(cert) else EXIT_NEGATIVE


# =========================
# refute-dn
# =========================
@guarded
def cmd_refute_dn(max_degree: Optional[int] = None, grammar: Optional[str] = None,
                  spec_path: Optional[str] = None, progress: bool = False,
                  out: Optional[str] = None, fmt: str = "human") -> int:
    """Un certificado por grado; 0 si todos son refutaciones que se reproducen."""
    config = _config(progress)
    raw = load_spec(spec_path) if spec_path else {}
    if raw and spec_kind(raw) != "refutation":
        raise SpecError(f"{spec_path} no es una especificación de refutación")
    spec = canonical_spec(raw, "refutation", {"grammar": grammar, "max_degree": max_degree})
    g, top = refutation_settings(spec)
    if top < 1:
        raise SpecError("--max-degree debe ser ≥ 1")
    certs = refute_polynomial_all_degrees(g, top, config)

    records = []
    all_refuted = True
    for d, cert in enumerate(certs, start=1):
        replays = verify_certificate(cert, degree_interval_samples(g, d, config))
        all_refuted = all_refuted and is_refutation(cert) and replays
        records.append(CertificateRecord(f"{g.value}-grado-{d}", cert, d))
    _emit(new_bundle(spec, records), out, fmt)
    return EXIT_OK if all_refuted else EXIT_NEGATIVE


# =========================
# enumerate
# =========================
@guarded
def cmd_enumerate(spec_path: Optional[str] = None, stream: Optional[str] = None, row: int = 0, pair: int = 0,
                  variant: Optional[str] = None, fmt: str = "human") -> int:
    """Imprime el par `pair` de la ecuación `row` sin materializar la tabla."""
    config = _config()
    if (spec_path is None) == (stream is None):
        raise SpecError("Indica un fichero de lenguaje o --stream nd|dn (uno de los dos)")
    if stream is not None:
        grammar = Grammar(stream.lower()) if stream.lower() in ("nd", "dn") else None
        if grammar is None:
            raise SpecError(f"Flujo desconocido: {stream!r}")
        source: TermStream = numeral_stream(grammar)
        m = numeral_meaning_function(grammar)
        enc_variant = EncodingVariant(variant or "plain")
    else:
        spec = canonical_spec(load_spec(spec_path), "language", {"variant": variant})
        job = build_language(spec)
        source = TermStream.from_fragment(job.fragment)
        missing = [render_term(t) for t in job.fragment.terms if t not in job.meanings]
        if missing:
            raise MissingMeaningError(missing)
        m = job.meanings.__getitem__
        enc_variant = job.variant

    entry = enumerate_table(source, m, row, pair, enc_variant, config.max_stream_scan)
    if fmt == "machine":
        payload = {"source": source.name, "row": row, "pair": pair, **entry_to_json(entry)}
        _stdout.print(canonical_json(payload), markup=False, highlight=False, soft_wrap=True)
    else:
        _stdout.print(texts.ENUMERATE_ENTRY.format(source=source.name, row=row, pair=pair, entry=entry), markup=False)
    return EXIT_OK


# =========================
# replay
# =========================
@guarded
def cmd_replay(bundle_path: str, spec_path: str, variant: Optional[str] = None, cls: Optional[str] = None,
               degree: Optional[int] = None, budget: Optional[int] = None, grammar: Optional[str] = None,
               max_degree: Optional[int] = None) -> int:
    """Reproduce un informe con la misma especificación (y los mismos flags) que lo generaron."""
    _config()
    bundle = deserialize_bundle(load_bytes(bundle_path))
    raw = load_spec(spec_path)
    kind = spec_kind(raw)
    overrides = {
        "language": {"variant": variant},
        "samples": {"class": cls, "degree": degree, "budget": budget},
        "refutation": {"grammar": grammar, "max_degree": max_degree},
    }[kind]
    spec = canonical_spec(raw, kind, overrides)
    _stdout.print(texts.REPLAY_HEADER.format(items=len(bundle.items), digest=bundle.spec_digest[:12]), markup=False)
    ok = replay_bundle(bundle, spec)
    _stdout.print(texts.REPLAY_OK if ok else texts.REPLAY_FAIL, markup=False)
    return EXIT_OK if ok else EXIT_NEGATIVE
