#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
systematicity.py — ¿es la semántica F-sistemática?
---------------------------------------------------
• Ajuste exacto de polinomios en dos variables de grado acotado (x = primer
  argumento, y = segundo) por eliminación sobre Fraction.
• Dependencia funcional: el valor del todo como función cualquiera de los
  valores proyectados (lectura amplia de "polinomio booleano").
• Certificados reproducibles: Fitted, RefutedByInconsistency,
  RefutedByInfeasibility y Underdetermined (muestras que no fijan el polinomio).

Aritmética exacta en todo el módulo: no hay tolerancias.
Base de monomios en orden graduado: 1; x, y; x², xy, y²; …
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from tqdm import tqdm

from compositor.config import CompositorConfig
from compositor.errors import (
    CertificateMismatchError,
    MeaningKindError,
    ResourceLimitError,
    SpecError,
)
from compositor.grammars import (
    CoordinationSemantics,
    Grammar,
    NumeralSemantics,
    all_assignments,
    evaluate_expression,
    numeral_from_term,
    numeral_strings,
    numeral_value,
    parse_numeral,
)
from compositor.meanings import MeaningValue, kind_of, meaning_to_json, render_meaning, same_meaning
from compositor.term import OpExpr, Var, parse_infix
from utils.log import get_logger
from utils.rational_elimination import (
    RationalEliminator,
    RowStatus,
    is_feasible,
    minimal_infeasible_subset,
    solve_system,
)

log = get_logger(__name__)

Monomial = Tuple[int, int]


# =========================
# Clases de funciones
# =========================
@dataclass(frozen=True)
class PolyTwoVar:
    max_degree: int

    def __post_init__(self) -> None:
        if not isinstance(self.max_degree, int) or self.max_degree < 0:
            raise SpecError(f"Grado no válido: {self.max_degree!r}")


@dataclass(frozen=True)
class BoolFunOfProjections:
    arity: int

    def __post_init__(self) -> None:
        if not isinstance(self.arity, int) or self.arity < 1:
            raise SpecError(f"Aridad no válida: {self.arity!r}")


FunctionClass = Union[PolyTwoVar, BoolFunOfProjections]


@dataclass(frozen=True)
class SamplePoint:
    args: Tuple[MeaningValue, ...]
    target: MeaningValue
    label: str = ""

    def __str__(self) -> str:
        args = ", ".join(render_meaning(a) for a in self.args)
        tag = f"[{self.label}] " if self.label else ""
        return f"{tag}({args}) → {render_meaning(self.target)}"


# =========================
# Certificados
# =========================
def monomials(degree: int) -> List[Monomial]:
    """Exponentes (i, j) de x^i·y^j con i+j ≤ degree, en orden graduado."""
    return [(total - j, j) for total in range(degree + 1) for j in range(total + 1)]


def _power_row(x: Fraction, y: Fraction, monos: Sequence[Monomial]) -> List[Fraction]:
    return [x**i * y**j for i, j in monos]


@dataclass(frozen=True)
class FittedPolynomial:
    """p(x, y) = Σ c·x^i·y^j, el único polinomio de grado ≤ degree que encaja."""

    degree: int
    coefficients: Tuple[Fraction, ...]

    @property
    def monomials(self) -> List[Monomial]:
        return monomials(self.degree)

    def coefficient(self, i: int, j: int) -> Fraction:
        return self.coefficients[self.monomials.index((i, j))]

    def evaluate(self, x: Any, y: Any) -> Fraction:
        powers = _power_row(Fraction(x), Fraction(y), self.monomials)
        return sum((c * p for c, p in zip(self.coefficients, powers)), Fraction(0))

    @property
    def natural(self) -> bool:
        """Coeficientes en los naturales, como en el modelo (Nat, +, ∗, 10)."""
        return all(c.denominator == 1 and c >= 0 for c in self.coefficients)

    @property
    def support(self) -> List[Monomial]:
        return [m for m, c in zip(self.monomials, self.coefficients) if c]

    def describe(self) -> str:
        terms = []
        for (i, j), c in zip(self.monomials, self.coefficients):
            if not c:
                continue
            var = ("x" if i == 1 else f"x^{i}" if i else "") + ("y" if j == 1 else f"y^{j}" if j else "")
            coef = render_meaning(c)
            if var and c == 1:
                coef = ""
            elif var and c == -1:
                coef = "-"
            terms.append(f"{coef}{var}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


@dataclass(frozen=True)
class FittedTable:
    """Tabla de verdad observada: args → target, en orden de primera aparición."""

    arity: int
    rows: Tuple[Tuple[Tuple[MeaningValue, ...], MeaningValue], ...]

    def lookup(self, args: Sequence[MeaningValue]) -> Optional[MeaningValue]:
        key = _key(tuple(args))
        for a, target in self.rows:
            if _key(a) == key:
                return target
        return None


@dataclass(frozen=True)
class RefutedByInconsistency:
    """Dos muestras con los mismos argumentos y distinto valor."""

    first: SamplePoint
    second: SamplePoint


@dataclass(frozen=True)
class RefutedByInfeasibility:
    """Subconjunto cuyas restricciones de interpolación no tienen solución de grado ≤ degree.

    Si el testigo sin su último punto determina un único interpolante, se
    guardan ese punto (held_out) y el interpolante que lo incumple.
    """

    degree: int
    witness: Tuple[SamplePoint, ...]
    held_out: Optional[SamplePoint] = None
    interpolant: Optional[Tuple[Fraction, ...]] = None


@dataclass(frozen=True)
class Underdetermined:
    """Los puntos elegidos no fijan el polinomio: queda un espacio de soluciones de esta dimensión."""

    degree: int
    dimension: int
    selected: Tuple[SamplePoint, ...]


Certificate = Union[FittedPolynomial, FittedTable, RefutedByInconsistency, RefutedByInfeasibility, Underdetermined]

REFUTATIONS = (RefutedByInconsistency, RefutedByInfeasibility)


def is_refutation(cert: Certificate) -> bool:
    return isinstance(cert, REFUTATIONS)


def is_fitted(cert: Certificate) -> bool:
    return isinstance(cert, (FittedPolynomial, FittedTable))


# =========================
# Utilidades internas
# =========================
def _key(v: Any) -> str:
    # igualdad que respeta el tipo: True ≠ 1, Fraction(2) ≠ 2
    return json.dumps(meaning_to_json(v), sort_keys=True)


def _rational(v: Any, where: str) -> Fraction:
    if kind_of(v) not in ("int", "rational"):
        raise MeaningKindError(f"{where}: se esperaba un racional y llegó {render_meaning(v)} ({kind_of(v)})")
    return Fraction(v)


def _rows(samples: Sequence[SamplePoint], monos: Sequence[Monomial]) -> List[Tuple[List[Fraction], Fraction]]:
    out = []
    for s in samples:
        if len(s.args) != 2:
            raise MeaningKindError(f"{s}: la clase polinómica necesita exactamente dos argumentos")
        x = _rational(s.args[0], str(s))
        y = _rational(s.args[1], str(s))
        out.append((_power_row(x, y, monos), _rational(s.target, str(s))))
    return out


def _solve_unique(rows: Sequence[Tuple[Sequence[Fraction], Fraction]], n_cols: int) -> Optional[Tuple[Fraction, ...]]:
    elim = solve_system(rows, n_cols)
    if not elim.consistent or elim.nullity:
        return None
    return tuple(elim.solution())


def _infeasibility(
    samples: Sequence[SamplePoint], rows: Sequence[Tuple[List[Fraction], Fraction]], degree: int
) -> RefutedByInfeasibility:
    n_cols = len(monomials(degree))
    idx = minimal_infeasible_subset(rows, n_cols)
    witness = tuple(samples[i] for i in idx)
    interpolant = _solve_unique([rows[i] for i in idx[:-1]], n_cols)
    held_out = witness[-1] if interpolant is not None else None
    return RefutedByInfeasibility(degree, witness, held_out, interpolant)


# =========================
# Operaciones
# =========================
def fit_polynomial(samples: Sequence[SamplePoint], cls: PolyTwoVar) -> Certificate:
    """Polinomio exacto de grado ≤ cls.max_degree, testigo de infactibilidad o,
    si las muestras no fijan un único polinomio, Underdetermined con las
    muestras que aportan rango.
    """
    samples = list(samples)
    if not samples:
        raise SpecError("fit_polynomial necesita al menos una muestra")
    monos = monomials(cls.max_degree)
    rows = _rows(samples, monos)

    elim = RationalEliminator(len(monos))
    pivots: List[int] = []
    for i, (coeffs, rhs) in enumerate(rows):
        status = elim.add_row(coeffs, rhs)
        if status == RowStatus.PIVOT:
            pivots.append(i)
        elif status == RowStatus.INCONSISTENT:
            log.info("❌ Grado %d: la muestra %s es incompatible con las anteriores", cls.max_degree, samples[i])
            return _infeasibility(samples, rows[: i + 1], cls.max_degree)

    if elim.nullity:
        log.warning("⚠️ Grado %d: %d muestras dejan %d grados de libertad", cls.max_degree, len(samples), elim.nullity)
        return Underdetermined(cls.max_degree, elim.nullity, tuple(samples[i] for i in pivots))

    fitted = FittedPolynomial(cls.max_degree, tuple(elim.solution()))
    log.info("✅ Grado %d: p(x, y) = %s", cls.max_degree, fitted.describe())
    return fitted


def fit_polynomial_with_budget(samples: Sequence[SamplePoint], cls: PolyTwoVar, point_budget: int) -> Certificate:
    """Fija el polinomio con `point_budget` puntos y comprueba si se extiende al resto.

    Se eligen, en orden, las muestras que aumentan el rango. Si no bastan para
    un interpolante único el resultado es Underdetermined (sin representante).
    """
    samples = list(samples)
    if point_budget < 1 or point_budget > len(samples):
        raise SpecError(f"Presupuesto {point_budget} fuera de 1..{len(samples)}")
    monos = monomials(cls.max_degree)
    rows = _rows(samples, monos)

    elim = RationalEliminator(len(monos))
    chosen: List[int] = []
    for i, (coeffs, rhs) in enumerate(rows):
        if len(chosen) == point_budget:
            break
        if elim.classify(coeffs, rhs) == RowStatus.PIVOT:
            elim.add_row(coeffs, rhs)
            chosen.append(i)
    selected = tuple(samples[i] for i in chosen)

    if elim.nullity:
        log.warning("⚠️ %d puntos dejan %d grados de libertad", len(chosen), elim.nullity)
        return Underdetermined(cls.max_degree, elim.nullity, selected)

    coeffs = tuple(elim.solution())
    fitted = FittedPolynomial(cls.max_degree, coeffs)
    for i, s in enumerate(samples):
        if fitted.evaluate(*s.args) != Fraction(s.target):
            log.info("❌ El interpolante %s falla en %s", fitted.describe(), s)
            witness = tuple(samples[j] for j in chosen) + (s,)
            return RefutedByInfeasibility(cls.max_degree, witness, s, coeffs)
    log.info("✅ %d puntos fijan %s, válido en las %d muestras", len(chosen), fitted.describe(), len(samples))
    return fitted


def check_functional_dependence(
    samples: Sequence[SamplePoint], cls: Optional[BoolFunOfProjections] = None
) -> Certificate:
    """FittedTable si el valor es función de los argumentos; si no, el primer par que choca."""
    samples = list(samples)
    if not samples:
        raise SpecError("check_functional_dependence necesita al menos una muestra")
    arity = cls.arity if cls is not None else len(samples[0].args)
    seen: Dict[str, SamplePoint] = {}
    rows: List[Tuple[Tuple[MeaningValue, ...], MeaningValue]] = []
    for s in samples:
        if len(s.args) != arity:
            raise MeaningKindError(f"{s}: se esperaban {arity} argumentos")
        key = _key(tuple(s.args))
        prev = seen.get(key)
        if prev is None:
            seen[key] = s
            rows.append((tuple(s.args), s.target))
        elif not same_meaning(prev.target, s.target):
            log.info("❌ Sin dependencia funcional: %s frente a %s", prev, s)
            return RefutedByInconsistency(prev, s)
    return FittedTable(arity, tuple(rows))


def _contains(samples: Sequence[SamplePoint], points: Iterable[SamplePoint]) -> None:
    keys = {(_key(tuple(s.args)), _key(s.target)) for s in samples}
    for p in points:
        if (_key(tuple(p.args)), _key(p.target)) not in keys:
            raise CertificateMismatchError(f"El certificado menciona {p}, que no está entre las muestras")


def verify_certificate(cert: Certificate, samples: Sequence[SamplePoint]) -> bool:
    """Reproduce el certificado sobre las muestras (True si se sostiene)."""
    samples = list(samples)
    if isinstance(cert, FittedPolynomial):
        if len(cert.coefficients) != len(monomials(cert.degree)):
            raise CertificateMismatchError("Número de coeficientes distinto del de monomios")
        if any(len(s.args) != 2 for s in samples):
            raise CertificateMismatchError("Las muestras no tienen dos argumentos")
        for coeffs, rhs in _rows(samples, cert.monomials):
            if sum((c * p for c, p in zip(cert.coefficients, coeffs)), Fraction(0)) != rhs:
                return False
        return True

    if isinstance(cert, FittedTable):
        for s in samples:
            if len(s.args) != cert.arity:
                raise CertificateMismatchError(f"{s} no tiene aridad {cert.arity}")
            got = cert.lookup(s.args)
            if got is None or not same_meaning(got, s.target):
                return False
        return True

    if isinstance(cert, RefutedByInconsistency):
        _contains(samples, (cert.first, cert.second))
        return _key(tuple(cert.first.args)) == _key(tuple(cert.second.args)) and not same_meaning(
            cert.first.target, cert.second.target
        )

    if isinstance(cert, RefutedByInfeasibility):
        _contains(samples, cert.witness)
        monos = monomials(cert.degree)
        rows = _rows(cert.witness, monos)
        if is_feasible(rows, len(monos)):
            return False
        if cert.interpolant is None:
            return True
        if cert.held_out is None or len(cert.interpolant) != len(monos):
            return False
        held = next((i for i, p in enumerate(cert.witness) if p == cert.held_out), None)
        if held is None:
            return False
        rest = [r for i, r in enumerate(rows) if i != held]
        if _solve_unique(rest, len(monos)) != tuple(cert.interpolant):
            return False
        p = FittedPolynomial(cert.degree, tuple(cert.interpolant))
        return p.evaluate(*cert.held_out.args) != Fraction(cert.held_out.target)

    if isinstance(cert, Underdetermined):
        _contains(samples, cert.selected)
        monos = monomials(cert.degree)
        elim = solve_system(_rows(cert.selected, monos), len(monos))
        return elim.consistent and cert.dimension > 0 and elim.nullity == cert.dimension

    raise CertificateMismatchError(f"Certificado desconocido: {type(cert).__name__}")


# =========================
# Muestras de los sistemas de ejemplo
# =========================
def _has_leading_zero(s: str, grammar: Grammar) -> bool:
    # subnumerales N: prefijos en ND, sufijos en DN
    if grammar == Grammar.ND:
        return s[0] == "0"
    return "0" in s[:-1]


def numeral_samples(
    grammar: Grammar | str,
    max_length: int,
    semantics: NumeralSemantics | str = NumeralSemantics.INTENDED,
    strings: Optional[Iterable[str]] = None,
    leading_zeros: bool = True,
) -> List[SamplePoint]:
    """Una muestra por numeral compuesto (longitud ≥ 2), en orden shortlex.

    ND: args = (μ(N), μ(D)) para N D;  DN: args = (μ(D), μ(N)) para D N.
    Con leading_zeros=False se descartan los numerales en los que el todo o
    alguna subparte N empieza por 0 ("07", y en DN también "105").
    """
    grammar = Grammar(grammar)
    words = strings if strings is not None else (s for s in numeral_strings(max_length) if len(s) >= 2)
    if not leading_zeros:
        words = (s for s in words if not _has_leading_zero(s, grammar))
    out = []
    for s in words:
        p = parse_numeral(s, grammar)
        left, right = p.tree.left, p.tree.right
        args = (
            numeral_value(numeral_from_term(left, grammar), semantics),
            numeral_value(numeral_from_term(right, grammar), semantics),
        )
        out.append(SamplePoint(args, numeral_value(p, semantics), s))
    return out


def _variables(e: OpExpr, acc: Optional[List[str]] = None) -> List[str]:
    acc = [] if acc is None else acc
    if isinstance(e, Var):
        if e.name not in acc:
            acc.append(e.name)
    else:
        _variables(e.left, acc)
        _variables(e.right, acc)
    return acc


def coordination_samples(
    expression: str = "a+(b&c)",
    projections: Sequence[str] = ("a", "b&c"),
    semantics: CoordinationSemantics | str = CoordinationSemantics.TWISTED,
) -> List[SamplePoint]:
    """Una muestra por asignación booleana (orden de tabla de verdad, 1 antes que 0).

    args = valores de las proyecciones (subexpresiones cuyo significado se
    conserva), target = valor de `expression` con la semántica pedida.
    """
    whole = parse_infix(expression)
    parts = [parse_infix(p) for p in projections]
    variables = _variables(whole)
    for part in parts:
        for v in _variables(part):
            if v not in variables:
                variables.append(v)
    out = []
    for env in all_assignments(variables):
        args = tuple(evaluate_expression(p, env, CoordinationSemantics.NATURAL) for p in parts)
        target = evaluate_expression(whole, env, semantics)
        label = ",".join(f"{k}={int(v)}" for k, v in env.items())
        out.append(SamplePoint(args, target, label))
    return out


def samples_from_source(source: Mapping[str, Any]) -> List[SamplePoint]:
    """Genera muestras desde un bloque `source` de un fichero de muestras."""
    family = source.get("family")
    if family == "numerals":
        try:
            grammar = Grammar(str(source.get("grammar", "nd")).lower())
            semantics = NumeralSemantics(str(source.get("semantics", "intended")).lower())
        except ValueError as exc:
            raise SpecError(f"Fuente de numerales no válida: {exc}") from None
        try:
            max_length = int(source.get("max_length", 2))
        except (TypeError, ValueError):
            raise SpecError(f"max_length debe ser un entero: {source.get('max_length')!r}") from None
        if max_length < 2:
            raise SpecError("max_length debe ser ≥ 2 para tener numerales compuestos")
        leading_zeros = source.get("leading_zeros", True)
        if not isinstance(leading_zeros, bool):
            raise SpecError(f"leading_zeros debe ser true o false: {leading_zeros!r}")
        return numeral_samples(grammar, max_length, semantics, leading_zeros=leading_zeros)
    if family == "coordination":
        try:
            semantics = CoordinationSemantics(str(source.get("semantics", "twisted")).lower())
        except ValueError as exc:
            raise SpecError(f"Semántica de coordinación no válida: {exc}") from None
        return coordination_samples(
            str(source.get("expression", "a+(b&c)")),
            tuple(source.get("projections", ("a", "b&c"))),
            semantics,
        )
    raise SpecError(f"Familia de muestras desconocida: {family!r}")


# =========================
# Refutación por grados
# =========================
def degree_interval_samples(
    grammar: Grammar | str, degree: int, config: Optional[CompositorConfig] = None
) -> List[SamplePoint]:
    """Rejilla finita para el grado `degree`: D ∈ 0..d y, para cada longitud
    ℓ = 1..d+1 de N, los d+1 primeros valores del intervalo 10^(ℓ-1) .. 10^ℓ − 1
    (0..d para ℓ = 1). Numerales de longitud hasta d+2.
    """
    grammar = Grammar(grammar)
    config = config or CompositorConfig()
    if degree < 1:
        raise SpecError("El grado debe ser ≥ 1")
    if degree > min(config.max_refutation_degree, 9):
        raise ResourceLimitError(
            f"Grado {degree} por encima del máximo configurado ({min(config.max_refutation_degree, 9)})"
        )
    largest = degree * 10 ** (degree + 1) + 10**degree + degree
    if largest > config.max_sample_magnitude:
        raise ResourceLimitError(f"Las muestras de grado {degree} llegan a {largest} (> {config.max_sample_magnitude})")

    words = []
    for length in range(1, degree + 2):
        start = 0 if length == 1 else 10 ** (length - 1)
        for n in range(start, start + degree + 1):
            for d in range(degree + 1):
                words.append(f"{d}{n}")
    return numeral_samples(grammar, degree + 2, NumeralSemantics.INTENDED, strings=words)


def refute_polynomial_all_degrees(
    grammar: Grammar | str = Grammar.DN,
    max_degree: int = 4,
    config: Optional[CompositorConfig] = None,
) -> List[Certificate]:
    """Un certificado por grado 1..max_degree (refutaciones para DN; Fitted para ND)."""
    config = config or CompositorConfig()
    grammar = Grammar(grammar)
    if max_degree < 1:
        raise SpecError("max_degree debe ser ≥ 1")
    certs: List[Certificate] = []
    for d in tqdm(range(1, max_degree + 1), desc=f"🧮 Grados {grammar.value.upper()}", disable=not config.progress):
        samples = degree_interval_samples(grammar, d, config)
        cert = fit_polynomial(samples, PolyTwoVar(d))
        certs.append(cert)
        log.info("%s grado %d: %s", "❌" if is_refutation(cert) else "✅", d, type(cert).__name__)
    return certs


__all__ = [
    "PolyTwoVar",
    "BoolFunOfProjections",
    "FunctionClass",
    "SamplePoint",
    "FittedPolynomial",
    "FittedTable",
    "RefutedByInconsistency",
    "RefutedByInfeasibility",
    "Underdetermined",
    "Certificate",
    "monomials",
    "is_refutation",
    "is_fitted",
    "fit_polynomial",
    "fit_polynomial_with_budget",
    "check_functional_dependence",
    "verify_certificate",
    "numeral_samples",
    "coordination_samples",
    "samples_from_source",
    "degree_interval_samples",
    "refute_polynomial_all_degrees",
]
