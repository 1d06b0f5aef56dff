#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Sistematicidad: ajuste exacto de polinomios, refutaciones verificables,
presupuesto de puntos, dependencia funcional booleana y refutación por grados.
"""

import sys
from pathlib import Path
sys.path.append(str(Path(__file__).resolve().parents[1]))

import itertools
import random
import time
from dataclasses import replace
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from compositor.config import CompositorConfig
from compositor.errors import CertificateMismatchError, MeaningKindError, ResourceLimitError, SpecError
from compositor.grammars import Grammar
from compositor.specs import SamplesSettings, build_samples, load_spec, samples_settings
from compositor.systematicity import (
    BoolFunOfProjections,
    FittedPolynomial,
    FittedTable,
    PolyTwoVar,
    RefutedByInconsistency,
    RefutedByInfeasibility,
    SamplePoint,
    Underdetermined,
    check_functional_dependence,
    coordination_samples,
    degree_interval_samples,
    fit_polynomial,
    fit_polynomial_with_budget,
    is_fitted,
    is_refutation,
    monomials,
    numeral_samples,
    refute_polynomial_all_degrees,
    verify_certificate,
)
from utils.rational_elimination import is_feasible

ROOT = Path(__file__).resolve().parents[1]


def samples_file(name):
    return build_samples(load_spec(ROOT / "data" / "samples" / f"{name}.yaml"))


def poly_rows(points, degree):
    monos = monomials(degree)
    return [([Fraction(p.args[0]) ** i * Fraction(p.args[1]) ** j for i, j in monos], Fraction(p.target))
            for p in points]


def assert_minimal(cert):
    """Quitar cualquier punto del testigo lo vuelve compatible."""
    n = len(monomials(cert.degree))
    assert not is_feasible(poly_rows(cert.witness, cert.degree), n)
    for k in range(len(cert.witness)):
        rest = cert.witness[:k] + cert.witness[k + 1:]
        assert is_feasible(poly_rows(rest, cert.degree), n)


# =========================
# Base de monomios
# =========================
def test_monomials_graded_order():
    assert monomials(0) == [(0, 0)]
    assert monomials(2) == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
    assert len(monomials(4)) == 15


def test_describe_polynomials():
    assert FittedPolynomial(1, (Fraction(0), Fraction(10), Fraction(1))).describe() == "10x + y"
    assert FittedPolynomial(0, (Fraction(0),)).describe() == "0"
    p = FittedPolynomial(2, tuple(Fraction(c) for c in (3, 0, -1, 0, Fraction(1, 2), 0)))
    assert p.describe() == "3 - y + 1/2xy"
    assert not p.natural
    assert p.support == [(0, 0), (0, 1), (1, 1)]


# =========================
# 🔢 Numerales
# =========================
def test_nd_fits_ten_x_plus_y():
    print("\n==============================")
    print("🧮 ND: AJUSTE EXACTO")
    print("==============================\n")
    samples = numeral_samples(Grammar.ND, 4)
    assert len(samples) == 100 + 1000 + 10000
    cert = fit_polynomial(samples, PolyTwoVar(1))
    assert isinstance(cert, FittedPolynomial)
    assert cert.coefficient(1, 0) == 10 and cert.coefficient(0, 1) == 1 and cert.coefficient(0, 0) == 0
    assert cert.natural
    assert verify_certificate(cert, samples)
    print(f"✅ p(x, y) = {cert.describe()}")


def test_numeral_sample_arguments():
    nd = {s.label: s for s in numeral_samples(Grammar.ND, 3)}
    dn = {s.label: s for s in numeral_samples(Grammar.DN, 3)}
    assert nd["472"].args == (47, 2) and nd["472"].target == 472
    assert dn["472"].args == (4, 72) and dn["472"].target == 472
    assert dn["100"].args == dn["10"].args == (1, 0)
    assert "7" not in nd


def test_dn_degree_three_is_refuted():
    samples = samples_file("dn")
    cert = fit_polynomial(samples, PolyTwoVar(3))
    assert isinstance(cert, RefutedByInfeasibility)
    assert [p.label for p in cert.witness] == ["10", "100"]
    assert cert.held_out is None and cert.interpolant is None
    assert verify_certificate(cert, samples)
    assert_minimal(cert)


def test_numeral_samples_without_leading_zeros():
    dn = {s.label: s for s in numeral_samples(Grammar.DN, 3, leading_zeros=False)}
    nd = {s.label: s for s in numeral_samples(Grammar.ND, 3, leading_zeros=False)}
    assert len(dn) == 90 + 810 and len(nd) == 90 + 900
    assert "07" not in dn and "100" not in dn and "105" not in dn
    assert dn["110"].args == (1, 10) and dn["110"].target == 110
    assert nd["100"].args == (10, 0)
    assert len({s.args for s in dn.values()}) == len(dn)


def test_dn_without_leading_zeros_is_refuted_by_degree():
    """Sin choques de argumentos: la refutación viene del grado, no de la funcionalidad."""
    samples = samples_file("dn_no_leading_zeros")
    cert = fit_polynomial(samples, PolyTwoVar(3))
    assert isinstance(cert, RefutedByInfeasibility)
    labels = [p.label for p in cert.witness]
    assert "110" in labels and len(labels) > 2
    assert len({p.args for p in cert.witness}) == len(cert.witness)
    assert verify_certificate(cert, samples)
    assert_minimal(cert)
    print(f"❌ DN sin ceros: testigo {labels}")


def test_dn_backwards_is_polynomial():
    cert = fit_polynomial(samples_file("dn_backwards"), PolyTwoVar(1))
    assert isinstance(cert, FittedPolynomial)
    assert cert.describe() == "x + 10y"
    assert cert.natural


def test_single_point_degree_zero():
    cert = fit_polynomial([SamplePoint((0, 0), 0)], PolyTwoVar(0))
    assert cert == FittedPolynomial(0, (Fraction(0),))
    assert cert.describe() == "0"


def test_free_parameters_are_reported():
    point = SamplePoint((1, 2), 5)
    cert = fit_polynomial([point], PolyTwoVar(1))
    assert isinstance(cert, Underdetermined)
    assert (cert.degree, cert.dimension, cert.selected) == (1, 2, (point,))
    assert not is_fitted(cert) and not is_refutation(cert)
    assert verify_certificate(cert, [point])


def test_repeated_points_do_not_fix_the_polynomial():
    samples = [SamplePoint((1, 2), 5), SamplePoint((1, 2), 5), SamplePoint((2, 4), 10)]
    cert = fit_polynomial(samples, PolyTwoVar(1))
    assert isinstance(cert, Underdetermined)
    assert cert.dimension == 1 and len(cert.selected) == 2
    assert verify_certificate(cert, samples)


# =========================
# Presupuesto de puntos
# =========================
def test_budget_nd_three_values_fit():
    cert = fit_polynomial_with_budget(samples_file("nd_three_values"), PolyTwoVar(1), 3)
    assert isinstance(cert, FittedPolynomial)
    assert cert.describe() == "10x + y"


def test_budget_dn_three_values_fail_at_100():
    samples = samples_file("dn_three_values")
    cert = fit_polynomial_with_budget(samples, PolyTwoVar(1), 3)
    assert isinstance(cert, RefutedByInfeasibility)
    assert cert.held_out.label == "100"
    assert [p.label for p in cert.witness] == ["00", "01", "10", "100"]
    assert FittedPolynomial(1, cert.interpolant).describe() == "10x + y"
    assert verify_certificate(cert, samples)


def test_budget_too_small_is_underdetermined():
    samples = numeral_samples(Grammar.ND, 2)
    cert = fit_polynomial_with_budget(samples, PolyTwoVar(1), 2)
    assert isinstance(cert, Underdetermined)
    assert cert.dimension == 1 and len(cert.selected) == 2
    assert not is_fitted(cert) and not is_refutation(cert)
    assert verify_certificate(cert, samples)


@pytest.mark.parametrize("budget", [0, -1, 101])
def test_budget_out_of_range(budget):
    with pytest.raises(SpecError):
        fit_polynomial_with_budget(numeral_samples(Grammar.ND, 2), PolyTwoVar(1), budget)


# =========================
# 🔀 Coordinación y tablas
# =========================
def test_twisted_coordination_clash():
    cert = check_functional_dependence(coordination_samples())
    assert isinstance(cert, RefutedByInconsistency)
    assert cert.first.args == cert.second.args == (True, False)
    assert (cert.first.label, cert.first.target) == ("a=1,b=1,c=0", False)
    assert (cert.second.label, cert.second.target) == ("a=1,b=0,c=1", True)
    assert verify_certificate(cert, coordination_samples())


def test_natural_coordination_is_a_table():
    samples = coordination_samples(semantics="natural")
    cert = check_functional_dependence(samples, BoolFunOfProjections(2))
    assert isinstance(cert, FittedTable)
    assert len(cert.rows) == 4
    assert cert.lookup((True, False)) is True
    assert verify_certificate(cert, samples)


def test_and_table_and_identity():
    samples = samples_file("and_table")
    cert = check_functional_dependence(samples)
    assert isinstance(cert, FittedTable) and cert.lookup((False, True)) is False
    identity = [SamplePoint((v,), v) for v in (True, False)]
    assert is_fitted(check_functional_dependence(identity, BoolFunOfProjections(1)))


def test_table_keys_respect_kind():
    cert = check_functional_dependence([SamplePoint((1,), True), SamplePoint((True,), False)])
    assert isinstance(cert, FittedTable) and len(cert.rows) == 2


@given(st.lists(st.tuples(st.tuples(st.booleans(), st.booleans()), st.booleans()), min_size=1, max_size=12))
@settings(max_examples=200, deadline=None)
def test_dependence_checker_matches_definition(rows):
    samples = [SamplePoint(args, target) for args, target in rows]
    functional = all(t1 == t2 for (a1, t1), (a2, t2) in itertools.combinations(rows, 2) if a1 == a2)
    cert = check_functional_dependence(samples)
    assert is_fitted(cert) == functional
    assert verify_certificate(cert, samples)


# =========================
# Verificación de certificados
# =========================
def test_tampered_coefficient_is_rejected():
    samples = numeral_samples(Grammar.ND, 3)
    cert = fit_polynomial(samples, PolyTwoVar(1))
    tampered = replace(cert, coefficients=(Fraction(0), Fraction(9), Fraction(1)))
    assert verify_certificate(cert, samples)
    assert not verify_certificate(tampered, samples)


def test_certificate_points_must_come_from_samples():
    cert = fit_polynomial(samples_file("dn"), PolyTwoVar(3))
    with pytest.raises(CertificateMismatchError):
        verify_certificate(cert, numeral_samples(Grammar.ND, 2))


def test_feasible_witness_does_not_verify():
    fake = RefutedByInfeasibility(1, tuple(numeral_samples(Grammar.ND, 2)[:3]))
    assert not verify_certificate(fake, numeral_samples(Grammar.ND, 2))


def test_mixed_kinds_are_rejected():
    with pytest.raises(MeaningKindError):
        fit_polynomial([SamplePoint((True, 1), 2)], PolyTwoVar(1))
    with pytest.raises(MeaningKindError):
        fit_polynomial([SamplePoint((1,), 2)], PolyTwoVar(1))
    with pytest.raises(MeaningKindError):
        check_functional_dependence([SamplePoint((True, True), True), SamplePoint((True,), True)])


def test_rational_samples_are_exact():
    pts = [SamplePoint((Fraction(1, 3), 0), Fraction(1, 2)), SamplePoint((0, 0), 0), SamplePoint((0, 1), 1)]
    cert = fit_polynomial(pts, PolyTwoVar(1))
    assert cert.coefficient(1, 0) == Fraction(3, 2)
    assert not cert.natural


# =========================
# Monotonía y completitud
# =========================
def test_refutation_survives_more_samples():
    base = samples_file("dn")
    cert = fit_polynomial(base, PolyTwoVar(3))
    rng = random.Random(5)
    for _ in range(10):
        extra = rng.sample(base, 50)
        bigger = list(cert.witness) + extra
        rng.shuffle(bigger)
        assert is_refutation(fit_polynomial(bigger, PolyTwoVar(3)))


@given(
    st.integers(min_value=0, max_value=2),
    st.lists(st.integers(min_value=-3, max_value=3), min_size=6, max_size=6),
    st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)), min_size=1, max_size=10),
)
@settings(max_examples=100, deadline=None)
def test_samples_of_a_polynomial_are_never_refuted(degree, coeffs, points):
    truth = FittedPolynomial(degree, tuple(Fraction(c) for c in coeffs[: len(monomials(degree))]))
    samples = [SamplePoint((x, y), int(truth.evaluate(x, y))) for x, y in points]
    cert = fit_polynomial(samples, PolyTwoVar(degree))
    assert isinstance(cert, (FittedPolynomial, Underdetermined))
    if isinstance(cert, FittedPolynomial):
        assert cert == truth
    assert verify_certificate(cert, samples)


def test_tiny_instances_brute_force():
    """Grado 0 sobre valores pequeños: compatible ⇔ todos los valores iguales."""
    rng = random.Random(11)
    for _ in range(300):
        pts = [SamplePoint((rng.randint(0, 2), rng.randint(0, 2)), rng.randint(0, 2)) for _ in range(rng.randint(1, 5))]
        cert = fit_polynomial(pts, PolyTwoVar(0))
        assert is_fitted(cert) == (len({p.target for p in pts}) == 1)
        if is_refutation(cert):
            assert verify_certificate(cert, pts)
            assert_minimal(cert)
            assert len(cert.witness) == 2


# =========================
# Refutación por grados
# =========================
def test_degree_interval_grid():
    samples = degree_interval_samples(Grammar.DN, 1)
    assert [s.label for s in samples] == ["00", "10", "01", "11", "010", "110", "011", "111"]
    assert len(degree_interval_samples(Grammar.DN, 3)) == 4 * 4 * 4


def test_refute_dn_all_degrees():
    print("\n==============================")
    print("❌ DN: REFUTACIÓN GRADOS 1..4")
    print("==============================\n")
    t0 = time.time()
    certs = refute_polynomial_all_degrees(Grammar.DN, 4)
    assert len(certs) == 4
    for d, cert in enumerate(certs, start=1):
        assert isinstance(cert, RefutedByInfeasibility), d
        assert cert.degree == d
        assert verify_certificate(cert, degree_interval_samples(Grammar.DN, d))
        assert_minimal(cert)
        print(f"❌ grado {d}: testigo de {len(cert.witness)} puntos")
    assert time.time() - t0 < 60


def test_nd_control_fits_every_degree():
    certs = refute_polynomial_all_degrees(Grammar.ND, 4)
    for d, cert in enumerate(certs, start=1):
        assert is_fitted(cert)
        assert verify_certificate(cert, degree_interval_samples(Grammar.ND, d))


def test_resource_guards():
    with pytest.raises(ResourceLimitError):
        degree_interval_samples(Grammar.DN, 10)
    with pytest.raises(ResourceLimitError):
        degree_interval_samples(Grammar.DN, 2, CompositorConfig(max_sample_magnitude=1000))
    with pytest.raises(SpecError):
        refute_polynomial_all_degrees(Grammar.DN, 0)


# =========================
# Ajustes de la especificación
# =========================
SETTINGS_CASES = [
    ({"class": "poly2", "degree": 3}, SamplesSettings("poly2", 3, None)),
    ({"class": "BoolFun", "degree": 1, "budget": 4}, SamplesSettings("boolfun", 1, 4)),
    ({"class": "poly2", "degree": "2"}, SamplesSettings("poly2", 2, None)),
]


@pytest.mark.parametrize("spec,expected", SETTINGS_CASES)
def test_samples_settings(spec, expected):
    assert samples_settings(spec) == expected


@pytest.mark.parametrize("spec", [
    {"class": "poly2", "degree": "abc"},
    {"class": "poly2", "degree": False},
    {"class": "poly2", "degree": None},
    {"class": "poly2", "degree": 1, "budget": [3]},
    {"class": "cubic", "degree": 1},
])
def test_samples_settings_rejects(spec):
    with pytest.raises(SpecError):
        samples_settings(spec)


def test_source_max_length_must_be_an_integer():
    with pytest.raises(SpecError):
        build_samples({"source": {"family": "numerals", "grammar": "dn", "max_length": "two"}})
