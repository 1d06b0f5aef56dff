#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Bundles de informes: serialización canónica, digests y replay.
"""

import sys
from pathlib import Path
sys.path.append(str(Path(__file__).resolve().parents[1]))

import json
from dataclasses import replace
from datetime import date
from fractions import Fraction

import pytest

from compositor import __version__
from compositor.certlib import (
    CertificateRecord,
    ReportBundle,
    TableRecord,
    bundle_digest,
    canonical_spec,
    deserialize_bundle,
    new_bundle,
    replay_bundle,
    serialize_bundle,
    spec_digest,
)
from compositor.encoder import EncodingVariant, encode, materialize_table, verify_homomorphism
from compositor.errors import DigestMismatchError, SpecError
from compositor.reports import Violation
from compositor.specs import build_language, build_samples, load_spec
from compositor.systematicity import (
    PolyTwoVar,
    check_functional_dependence,
    degree_interval_samples,
    fit_polynomial,
    fit_polynomial_with_budget,
    refute_polynomial_all_degrees,
)
from utils.helpers import canonical_json

ROOT = Path(__file__).resolve().parents[1]
SPECS = ROOT / "data" / "specs"
SAMPLES = ROOT / "data" / "samples"


def language_bundle(name, variant=None, with_table=False):
    spec = canonical_spec(load_spec(SPECS / f"{name}.yaml"), "language", {"variant": variant})
    job = build_language(spec)
    session = encode(job.fragment, job.meanings, job.variant)
    items = [verify_homomorphism(session)]
    if with_table:
        items.append(TableRecord(job.fragment.name, materialize_table(session)))
    return spec, new_bundle(spec, items)


def samples_bundle(name, budget=None):
    spec = canonical_spec(load_spec(SAMPLES / f"{name}.yaml"), "samples", {"budget": budget})
    samples = build_samples(spec)
    if spec["class"] == "boolfun":
        cert = check_functional_dependence(samples)
    elif spec.get("budget") is not None:
        cert = fit_polynomial_with_budget(samples, PolyTwoVar(spec["degree"]), spec["budget"])
    else:
        cert = fit_polynomial(samples, PolyTwoVar(spec["degree"]))
    return spec, new_bundle(spec, [CertificateRecord(name, cert)])


def refutation_bundle(max_degree=2):
    spec = canonical_spec({}, "refutation", {"max_degree": max_degree})
    certs = refute_polynomial_all_degrees("dn", max_degree)
    records = [CertificateRecord(f"dn-grado-{d}", c, d) for d, c in enumerate(certs, start=1)]
    return spec, new_bundle(spec, records)


ALL_BUNDLES = [
    ("idioms", lambda: language_bundle("idioms", with_table=True)),
    ("coordination-dollar", lambda: language_bundle("coordination", "dollar", with_table=True)),
    ("nd-fit", lambda: samples_bundle("nd_three_values")),
    ("dn-fit", lambda: samples_bundle("dn")),
    ("dn-budget", lambda: samples_bundle("dn_three_values")),
    ("coord", lambda: samples_bundle("coord")),
    ("refute", refutation_bundle),
]


# =========================
# Especificación canónica
# =========================
def test_canonical_spec_applies_defaults_and_overrides():
    raw = load_spec(SAMPLES / "nd.yaml")
    spec = canonical_spec(raw, "samples", {"degree": 2, "budget": None})
    assert spec["kind"] == "samples" and spec["class"] == "poly2" and spec["degree"] == 2
    assert "budget" not in spec
    assert canonical_spec(raw, "samples") != spec
    assert spec_digest(canonical_spec(raw, "samples")) == spec_digest(canonical_spec(dict(raw), "samples"))


def test_canonical_spec_unknown_kind():
    with pytest.raises(SpecError):
        canonical_spec({}, "poem")


def test_canonical_spec_rejects_values_json_cannot_hold():
    with pytest.raises(SpecError):
        canonical_spec({"terms": ["a"], "meanings": {"a": date(2024, 1, 1)}}, "language")


def test_defaults_equal_explicit_values():
    implicit = canonical_spec({"grammar": "dn"}, "refutation")
    explicit = canonical_spec({"grammar": "dn", "max_degree": 4}, "refutation")
    assert spec_digest(implicit) == spec_digest(explicit)


# =========================
# Serialización
# =========================
@pytest.mark.parametrize("name,factory", ALL_BUNDLES)
def test_round_trip_and_replay(name, factory):
    spec, bundle = factory()
    data = serialize_bundle(bundle)
    again = deserialize_bundle(data)
    assert again == bundle
    assert serialize_bundle(again) == data
    assert data.endswith(b"}\n")
    assert bundle.tool_version == __version__
    assert replay_bundle(again, spec)
    print(f"✅ {name}: {bundle_digest(bundle)[:12]}")


def test_serialization_is_deterministic():
    _, b1 = samples_bundle("dn")
    _, b2 = samples_bundle("dn")
    assert serialize_bundle(b1) == serialize_bundle(b2)
    assert bundle_digest(b1) == bundle_digest(b2)


def test_keys_are_sorted():
    _, bundle = samples_bundle("nd_three_values")
    text = serialize_bundle(bundle).decode("utf-8")
    assert text == canonical_json(json.loads(text)) + "\n"


def test_digest_changes_when_one_violation_flips():
    _, bundle = language_bundle("idioms")
    report = bundle.items[0]
    flipped = replace(report, violations=(Violation("mu(s)(mu(t)) = mu(s.t)", "high", "wall"),))
    other = ReportBundle(bundle.tool_version, bundle.spec_digest, (flipped,))
    assert report.passed and not flipped.passed
    assert bundle_digest(bundle) != bundle_digest(other)


@pytest.mark.parametrize("raw", [b"", b"{", b"[]", b'{"tool_version": "x"}', b"\xff\xfe",
                                 b'{"tool_version":"x","spec_digest":"y","items":[{"type":"poem"}]}'])
def test_deserialize_rejects_garbage(raw):
    with pytest.raises(SpecError):
        deserialize_bundle(raw)


# =========================
# Replay
# =========================
def test_tampered_coefficient_does_not_replay():
    spec, bundle = samples_bundle("nd_three_values")
    record = bundle.items[0]
    cert = record.certificate
    coeffs = list(cert.coefficients)
    coeffs[cert.monomials.index((1, 0))] = Fraction(9)
    tampered = ReportBundle(bundle.tool_version, bundle.spec_digest,
                            (replace(record, certificate=replace(cert, coefficients=tuple(coeffs))),))
    assert not replay_bundle(tampered, spec)


def test_tampered_report_does_not_replay():
    spec, bundle = language_bundle("coordination")
    report = bundle.items[0]
    lying = replace(report, terms_checked=report.terms_checked + 1)
    assert not replay_bundle(ReportBundle(bundle.tool_version, bundle.spec_digest, (lying,)), spec)


def test_tampered_witness_does_not_replay():
    spec, bundle = refutation_bundle(1)
    record = bundle.items[0]
    honest = record.certificate
    shorter = replace(honest, witness=honest.witness[:-1], held_out=None, interpolant=None)
    assert not replay_bundle(ReportBundle(bundle.tool_version, bundle.spec_digest,
                                          (replace(record, certificate=shorter),)), spec)


def test_wrong_spec_raises_digest_mismatch():
    _, bundle = samples_bundle("nd_three_values")
    other = canonical_spec(load_spec(SAMPLES / "nd.yaml"), "samples")
    with pytest.raises(DigestMismatchError):
        replay_bundle(bundle, other)


def test_overrides_are_part_of_the_identity():
    spec, bundle = language_bundle("idioms", "dollar")
    assert spec["variant"] == "dollar"
    assert bundle.items[0].variant == EncodingVariant.DOLLAR.value
    plain = canonical_spec(load_spec(SPECS / "idioms.yaml"), "language")
    with pytest.raises(DigestMismatchError):
        replay_bundle(bundle, plain)


def test_refutation_records_carry_their_degree():
    spec, bundle = refutation_bundle(2)
    assert [r.degree for r in bundle.items] == [1, 2]
    for record in bundle.items:
        assert record.certificate.degree == record.degree
        assert all(p in degree_interval_samples("dn", record.degree) for p in record.certificate.witness)
