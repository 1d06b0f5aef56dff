#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
certlib.py — evidencias reproducibles
-------------------------------------
• Un único modelo para los informes de μ (siempre composicional) y los
  certificados de sistematicidad (ajuste o refutación).
• ReportBundle: versión, digest de la especificación canónica y la lista
  ordenada de informes, certificados y tablas.
• Serialización canónica: JSON UTF-8, claves ordenadas, racionales como
  pares [numerador, denominador]. Misma especificación ⇒ mismos bytes.
• replay_bundle vuelve a ejecutar cada comprobación.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from compositor import __version__
from compositor.encoder import (
    EncodingVariant,
    MuRow,
    MuTable,
    MuTag,
    TableEntry,
    encode,
    materialize_table,
    verify_homomorphism,
)
from compositor.errors import CertificateMismatchError, DigestMismatchError, SpecError
from compositor.meanings import meaning_from_json, meaning_to_json
from compositor.reports import VerificationReport, Violation
from compositor.specs import SPEC_DEFAULTS, build_language, build_samples, refutation_settings
from compositor.systematicity import (
    Certificate,
    FittedPolynomial,
    FittedTable,
    RefutedByInconsistency,
    RefutedByInfeasibility,
    SamplePoint,
    Underdetermined,
    degree_interval_samples,
    verify_certificate,
)
from compositor.term import MARKER, Marker, make_term, render_term
from utils.helpers import canonical_json, sha1_text
from utils.log import get_logger

log = get_logger(__name__)


# =========================
# Modelo
# =========================
@dataclass(frozen=True)
class CertificateRecord:
    subject: str
    certificate: Certificate
    degree: Optional[int] = None   # grado de la rejilla en las refutaciones por grados


@dataclass(frozen=True)
class TableRecord:
    subject: str
    table: MuTable


BundleItem = Union[VerificationReport, CertificateRecord, TableRecord]


@dataclass(frozen=True)
class ReportBundle:
    tool_version: str
    spec_digest: str
    items: Tuple[BundleItem, ...]

    @property
    def passed(self) -> bool:
        return all(i.passed for i in self.items if isinstance(i, VerificationReport))


# =========================
# Especificación canónica
# =========================
def canonical_spec(raw: Mapping[str, Any], kind: str, overrides: Optional[Mapping[str, Any]] = None) -> Dict[str, Any]:
    """Documento + valores por defecto + flags de la CLI (los None se ignoran) + `kind`."""
    if kind not in SPEC_DEFAULTS:
        raise SpecError(f"Tipo de especificación desconocido: {kind!r}")
    data: Dict[str, Any] = {**SPEC_DEFAULTS[kind], **raw}
    data.update({k: v for k, v in (overrides or {}).items() if v is not None})
    data["kind"] = kind
    # ida y vuelta por JSON: mismos tipos que tras deserializar
    try:
        return json.loads(canonical_json(data))
    except (TypeError, ValueError) as exc:
        raise SpecError(f"La especificación contiene valores que no son JSON: {exc}") from None


def spec_digest(spec: Mapping[str, Any]) -> str:
    return sha1_text(canonical_json(spec))


# =========================
# Términos y valores de tabla
# =========================
def _value_to_json(v: Any) -> Any:
    if isinstance(v, Marker):
        return {"marker": "$"}
    if isinstance(v, MuTag):
        return {"mu": render_term(v.tag)}
    return meaning_to_json(v)


def _argument_to_json(a: Any) -> Any:
    if isinstance(a, (Marker, MuTag)):
        return _value_to_json(a)
    return {"term": render_term(a)}


def _value_from_json(d: Any) -> Any:
    if isinstance(d, dict) and "marker" in d:
        return MARKER
    if isinstance(d, dict) and "mu" in d:
        return MuTag(make_term(d["mu"]))
    if isinstance(d, dict) and "term" in d:
        return make_term(d["term"])
    return meaning_from_json(d)


def entry_to_json(e: TableEntry) -> Dict[str, Any]:
    return {"argument": _argument_to_json(e.argument), "value": _value_to_json(e.value)}


def table_to_json(t: MuTable) -> Dict[str, Any]:
    return {
        "subject": t.subject,
        "variant": t.variant,
        "rows": [
            {
                "term": render_term(r.term),
                "entries": [entry_to_json(e) for e in r.entries],
            }
            for r in t.rows
        ],
    }


def table_from_json(d: Mapping[str, Any]) -> MuTable:
    rows = tuple(
        MuRow(
            make_term(r["term"]),
            tuple(TableEntry(_value_from_json(e["argument"]), _value_from_json(e["value"])) for e in r["entries"]),
        )
        for r in d["rows"]
    )
    return MuTable(d["subject"], d["variant"], rows)


# =========================
# Certificados
# =========================
def _rat(v: Fraction) -> List[int]:
    v = Fraction(v)
    return [v.numerator, v.denominator]


def _from_rat(p: Sequence[int]) -> Fraction:
    return Fraction(int(p[0]), int(p[1]))


def sample_to_json(s: SamplePoint) -> Dict[str, Any]:
    return {"args": [meaning_to_json(a) for a in s.args], "target": meaning_to_json(s.target), "label": s.label}


def sample_from_json(d: Mapping[str, Any]) -> SamplePoint:
    return SamplePoint(
        tuple(meaning_from_json(a) for a in d["args"]), meaning_from_json(d["target"]), str(d.get("label", ""))
    )


def certificate_to_json(c: Certificate) -> Dict[str, Any]:
    if isinstance(c, FittedPolynomial):
        return {
            "kind": "fitted_polynomial",
            "degree": c.degree,
            "coefficients": [_rat(x) for x in c.coefficients],
            "monomials": [list(m) for m in c.monomials],
            "natural": c.natural,
            "polynomial": c.describe(),
        }
    if isinstance(c, FittedTable):
        return {
            "kind": "fitted_table",
            "arity": c.arity,
            "rows": [{"args": [meaning_to_json(a) for a in args], "target": meaning_to_json(t)} for args, t in c.rows],
        }
    if isinstance(c, RefutedByInconsistency):
        return {"kind": "refuted_by_inconsistency", "first": sample_to_json(c.first), "second": sample_to_json(c.second)}
    if isinstance(c, RefutedByInfeasibility):
        return {
            "kind": "refuted_by_infeasibility",
            "degree": c.degree,
            "witness": [sample_to_json(s) for s in c.witness],
            "held_out": sample_to_json(c.held_out) if c.held_out is not None else None,
            "interpolant": [_rat(x) for x in c.interpolant] if c.interpolant is not None else None,
        }
    if isinstance(c, Underdetermined):
        return {
            "kind": "underdetermined",
            "degree": c.degree,
            "dimension": c.dimension,
            "selected": [sample_to_json(s) for s in c.selected],
        }
    raise CertificateMismatchError(f"Certificado desconocido: {type(c).__name__}")


def certificate_from_json(d: Mapping[str, Any]) -> Certificate:
    kind = d.get("kind")
    if kind == "fitted_polynomial":
        return FittedPolynomial(int(d["degree"]), tuple(_from_rat(x) for x in d["coefficients"]))
    if kind == "fitted_table":
        rows = tuple(
            (tuple(meaning_from_json(a) for a in r["args"]), meaning_from_json(r["target"])) for r in d["rows"]
        )
        return FittedTable(int(d["arity"]), rows)
    if kind == "refuted_by_inconsistency":
        return RefutedByInconsistency(sample_from_json(d["first"]), sample_from_json(d["second"]))
    if kind == "refuted_by_infeasibility":
        held = d.get("held_out")
        interp = d.get("interpolant")
        return RefutedByInfeasibility(
            int(d["degree"]),
            tuple(sample_from_json(s) for s in d["witness"]),
            sample_from_json(held) if held is not None else None,
            tuple(_from_rat(x) for x in interp) if interp is not None else None,
        )
    if kind == "underdetermined":
        return Underdetermined(int(d["degree"]), int(d["dimension"]), tuple(sample_from_json(s) for s in d["selected"]))
    raise SpecError(f"Tipo de certificado desconocido: {kind!r}")


# =========================
# Informes e items
# =========================
def report_to_json(r: VerificationReport) -> Dict[str, Any]:
    return {
        "subject": r.subject,
        "variant": r.variant,
        "terms_checked": r.terms_checked,
        "pairs_checked": r.pairs_checked,
        "status": r.status,
        "violations": [{"equation": v.equation, "left": v.left, "right": v.right} for v in r.violations],
    }


def report_from_json(d: Mapping[str, Any]) -> VerificationReport:
    return VerificationReport(
        d["subject"],
        d["variant"],
        int(d["terms_checked"]),
        int(d["pairs_checked"]),
        tuple(Violation(v["equation"], v["left"], v["right"]) for v in d["violations"]),
    )


def item_to_json(item: BundleItem) -> Dict[str, Any]:
    if isinstance(item, VerificationReport):
        return {"type": "report", **report_to_json(item)}
    if isinstance(item, CertificateRecord):
        return {
            "type": "certificate",
            "subject": item.subject,
            "degree": item.degree,
            "certificate": certificate_to_json(item.certificate),
        }
    return {"type": "table", "subject": item.subject, "table": table_to_json(item.table)}


def item_from_json(d: Mapping[str, Any]) -> BundleItem:
    kind = d.get("type")
    if kind == "report":
        return report_from_json(d)
    if kind == "certificate":
        return CertificateRecord(d["subject"], certificate_from_json(d["certificate"]), d.get("degree"))
    if kind == "table":
        return TableRecord(d["subject"], table_from_json(d["table"]))
    raise SpecError(f"Elemento de informe desconocido: {kind!r}")


# =========================
# Bundle
# =========================
def serialize_bundle(b: ReportBundle) -> bytes:
    data = {
        "tool_version": b.tool_version,
        "spec_digest": b.spec_digest,
        "items": [item_to_json(i) for i in b.items],
    }
    return (canonical_json(data) + "\n").encode("utf-8")


def deserialize_bundle(raw: bytes) -> ReportBundle:
    try:
        data = json.loads(raw.decode("utf-8"))
        return ReportBundle(
            str(data["tool_version"]), str(data["spec_digest"]), tuple(item_from_json(i) for i in data["items"])
        )
    except (UnicodeDecodeError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, SpecError):
            raise
        raise SpecError(f"Informe ilegible: {exc}") from None


def bundle_digest(b: ReportBundle) -> str:
    return sha1_text(serialize_bundle(b).decode("utf-8"))


def new_bundle(spec: Mapping[str, Any], items: Sequence[BundleItem]) -> ReportBundle:
    return ReportBundle(__version__, spec_digest(spec), tuple(items))


# =========================
# Replay
# =========================
def _samples_for(record: CertificateRecord, spec: Mapping[str, Any]) -> List[SamplePoint]:
    if spec.get("kind") == "refutation":
        grammar, _ = refutation_settings(spec)
        if record.degree is None:
            raise CertificateMismatchError("Certificado de refutación sin grado")
        return degree_interval_samples(grammar, record.degree)
    return build_samples(spec)


def replay_bundle(b: ReportBundle, spec: Mapping[str, Any]) -> bool:
    """Vuelve a ejecutar todo: True si cada estado se reproduce.

    DigestMismatchError si `spec` (canónica) no es la entrada del bundle.
    """
    digest = spec_digest(spec)
    if digest != b.spec_digest:
        raise DigestMismatchError(f"El informe es de la especificación {b.spec_digest[:12]}…, no de {digest[:12]}…")

    ok = True
    for item in b.items:
        if isinstance(item, VerificationReport):
            job = build_language(spec)
            session = encode(job.fragment, job.meanings, EncodingVariant(item.variant))
            fresh = verify_homomorphism(session)
            same = report_to_json(fresh) == report_to_json(item)
        elif isinstance(item, TableRecord):
            job = build_language(spec)
            session = encode(job.fragment, job.meanings, EncodingVariant(item.table.variant))
            same = table_to_json(materialize_table(session)) == table_to_json(item.table)
        else:
            try:
                same = verify_certificate(item.certificate, _samples_for(item, spec))
            except CertificateMismatchError as exc:
                log.warning("⚠️ %s: %s", item.subject, exc)
                same = False
        if not same:
            log.error("❌ No se reproduce: %s", getattr(item, "subject", "?"))
        ok = ok and same
    if ok:
        log.info("✅ Informe reproducido: %d elementos", len(b.items))
    return ok


__all__ = [
    "VerificationReport",
    "Violation",
    "CertificateRecord",
    "TableRecord",
    "ReportBundle",
    "canonical_spec",
    "spec_digest",
    "serialize_bundle",
    "deserialize_bundle",
    "bundle_digest",
    "new_bundle",
    "replay_bundle",
    "certificate_to_json",
    "certificate_from_json",
    "table_to_json",
    "entry_to_json",
    "table_from_json",
]
