#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
encoder.py — codificación composicional μ
------------------------------------------
Para cualquier fragmento S y cualquier asignación m : S → M construye μ con

    PLAIN:   μ(s.t) = μ(s)(μ(t))   y   μ(s)(s) = m(s)
    DOLLAR:  μ(s.t) = μ(s)(μ(t))   y   μ(s.$) = m(s),  μ($) = $

μ(s) no se guarda como conjunto circular: es una etiqueta (el propio s) más
la regla de aplicación de la sesión. La vista extensional (tabla de pares)
se obtiene con materialize_table, enumerate_table y unfold.

El codificador nunca relaciona m(s.t) con m(s), m(t): m es arbitraria.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

from compositor.reports import VerificationReport, Violation
from compositor.errors import (
    MissingMeaningError,
    OutOfRangeError,
    UndefinedApplicationError,
)
from compositor.meanings import MeaningValue, render_meaning, same_meaning
from compositor.term import (
    MARKER,
    DollarTerm,
    LanguageFragment,
    Marker,
    Node,
    Term,
    is_term,
    render_term,
)
from utils.log import get_logger

log = get_logger(__name__)


class EncodingVariant(str, Enum):
    PLAIN = "plain"
    DOLLAR = "dollar"


MeaningAssignment = Mapping[Term, MeaningValue]


# =========================
# μ(s): etiqueta + sesión
# =========================
@dataclass(frozen=True, eq=False)
class MuValue:
    tag: Term
    session: "EncodingSession" = field(repr=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MuValue):
            return NotImplemented
        return self.session is other.session and self.tag == other.tag

    def __hash__(self) -> int:
        return hash((self.tag, id(self.session)))

    def __call__(self, x: Any) -> Any:
        return self.session.apply(self, x)

    def __str__(self) -> str:
        return f"μ({render_term(self.tag)})"


@dataclass(frozen=True)
class MuTag:
    """Referencia extensional a μ(tag) dentro de una tabla."""

    tag: Term

    def __str__(self) -> str:
        return f"μ({render_term(self.tag)})"


class EncodingSession:
    """Sistema de ecuaciones de un (fragmento, m, variante). Inmutable tras encode()."""

    def __init__(self, fragment: LanguageFragment, meanings: MeaningAssignment, variant: EncodingVariant):
        self.fragment = fragment
        self.variant = EncodingVariant(variant)
        self._meanings: Dict[Term, MeaningValue] = {t: meanings[t] for t in fragment.terms}
        self._memo: Dict[Term, MuValue] = {}
        self._lock = threading.Lock()

    def meaning(self, s: Term) -> MeaningValue:
        return self._meanings[s]

    # ---------- μ ----------
    def mu(self, s: Union[Term, Marker, DollarTerm]) -> Any:
        """μ sobre el dominio de la sesión.

        Términos del fragmento → MuValue. En DOLLAR además μ($) = $ y
        μ(s.$) = m(s) (pares añadidos al grafo de μ).
        """
        if isinstance(s, Marker):
            self.require_dollar("μ($)")
            return MARKER
        if isinstance(s, DollarTerm):
            self.require_dollar(str(s))
            if s.body not in self.fragment:
                raise UndefinedApplicationError(f"μ({s}) indefinida: {render_term(s.body)} no está en el fragmento")
            return self._meanings[s.body]
        if not is_term(s) or s not in self.fragment:
            raise UndefinedApplicationError(f"μ indefinida fuera del fragmento: {s}")
        cached = self._memo.get(s)
        if cached is not None:
            return cached
        with self._lock:
            # escritura única: el primero que llega fija el valor
            return self._memo.setdefault(s, MuValue(s, self))

    def require_dollar(self, what: str) -> None:
        """UndefinedApplicationError salvo en la variante dollar."""
        if self.variant != EncodingVariant.DOLLAR:
            raise UndefinedApplicationError(f"{what} sólo existe en la variante dollar")

    # ---------- aplicación ----------
    def apply(self, f: Any, x: Any) -> Any:
        if isinstance(f, Marker):
            raise UndefinedApplicationError("μ($) sólo actúa como argumento marcador")
        if not isinstance(f, MuValue) or f.session is not self:
            raise UndefinedApplicationError(f"{f} no pertenece a esta sesión")

        if isinstance(x, MuValue):
            if x.session is not self:
                raise UndefinedApplicationError(f"{x} pertenece a otra sesión")
            if (f.tag, x.tag) not in self.fragment.pair_set:
                raise UndefinedApplicationError(
                    f"{f}({x}) indefinida: {render_term(Node(f.tag, x.tag))} no está en el fragmento"
                )
            return self.mu(Node(f.tag, x.tag))

        if self.variant == EncodingVariant.PLAIN:
            if is_term(x) and x == f.tag:
                return self._meanings[f.tag]
            raise UndefinedApplicationError(f"{f}({x}) indefinida: el término crudo debe ser {render_term(f.tag)}")

        if isinstance(x, Marker):
            return self._meanings[f.tag]
        raise UndefinedApplicationError(f"{f}({x}) indefinida en la variante dollar")

    def base_argument(self, s: Term) -> Union[Term, Marker]:
        return s if self.variant == EncodingVariant.PLAIN else MARKER


def encode(fragment: LanguageFragment, m: MeaningAssignment, variant: EncodingVariant = EncodingVariant.PLAIN) -> EncodingSession:
    missing = [render_term(t) for t in fragment.terms if t not in m]
    if missing:
        raise MissingMeaningError(missing)
    session = EncodingSession(fragment, m, variant)
    log.debug("🧮 Sesión %s sobre %s: %d términos, %d pares", session.variant.value, fragment.name,
              len(fragment.terms), len(fragment.allowed_pairs))
    return session


def mu(session: EncodingSession, s: Union[Term, Marker, DollarTerm]) -> Any:
    return session.mu(s)


def apply(f: Any, x: Any) -> Any:
    """μ(s)(x) — delega en la sesión de f."""
    if isinstance(f, MuValue):
        return f.session.apply(f, x)
    raise UndefinedApplicationError(f"{f} no es aplicable")


def dollar_graph(session: EncodingSession) -> List[Tuple[Union[Marker, DollarTerm], Any]]:
    """Pares añadidos al grafo de μ en la variante dollar: <$, $> y <s.$, m(s)>."""
    session.require_dollar("El grafo extendido")
    out: List[Tuple[Union[Marker, DollarTerm], Any]] = [(MARKER, MARKER)]
    out.extend((DollarTerm(s), session.meaning(s)) for s in session.fragment.terms)
    return out


# =========================
# Verificación exhaustiva
# =========================
def _show(v: Any) -> str:
    if isinstance(v, (MuValue, MuTag, Marker, DollarTerm)):
        return str(v)
    if is_term(v):
        return render_term(v)
    return render_meaning(v)


def _same(a: Any, b: Any) -> bool:
    if isinstance(a, (MuValue, Marker)) or isinstance(b, (MuValue, Marker)):
        return a == b
    return same_meaning(a, b)


def verify_homomorphism(session: EncodingSession) -> VerificationReport:
    """Comprueba todas las ecuaciones definitorias sobre todo el fragmento.

    Las violaciones se devuelven en el informe; el teorema garantiza que no hay.
    """
    frag = session.fragment
    violations: List[Violation] = []

    def check(equation: str, left: Callable[[], Any], right: Callable[[], Any]) -> None:
        try:
            lv = left()
        except UndefinedApplicationError as exc:
            violations.append(Violation(equation, f"indefinido: {exc}", _show(right())))
            return
        rv = right()
        if not _same(lv, rv):
            violations.append(Violation(equation, _show(lv), _show(rv)))

    if session.variant == EncodingVariant.PLAIN:
        for s in frag.terms:
            check(f"decode {render_term(s)}", lambda s=s: apply(session.mu(s), s), lambda s=s: session.meaning(s))
    else:
        check("marker μ($)=$", lambda: session.mu(MARKER), lambda: MARKER)
        for s in frag.terms:
            check(f"dollar {render_term(s)}",
                  lambda s=s: session.mu(DollarTerm(s)), lambda s=s: session.meaning(s))
            check(f"bookkeeping {render_term(s)}",
                  lambda s=s: apply(session.mu(s), session.mu(MARKER)), lambda s=s: session.mu(DollarTerm(s)))

    for s, t in frag.allowed_pairs:
        check(f"homomorphism {render_term(Node(s, t))}",
              lambda s=s, t=t: apply(session.mu(s), session.mu(t)),
              lambda s=s, t=t: session.mu(Node(s, t)))

    report = VerificationReport(
        subject=frag.name,
        variant=session.variant.value,
        terms_checked=len(frag.terms),
        pairs_checked=len(frag.allowed_pairs),
        violations=tuple(violations),
    )
    if violations:
        log.error("❌ %s: %d violaciones", frag.name, len(violations))
    else:
        log.info("✅ %s (%s): %d términos y %d pares sin violaciones", frag.name, session.variant.value,
                 report.terms_checked, report.pairs_checked)
    return report


# =========================
# Tabla explícita
# =========================
TableArgument = Union[Term, Marker, MuTag]


@dataclass(frozen=True)
class TableEntry:
    argument: TableArgument
    value: Any   # MeaningValue en el par base, MuTag en los demás

    @property
    def is_base(self) -> bool:
        return not isinstance(self.argument, MuTag)

    def __str__(self) -> str:
        return f"<{_show(self.argument)}, {_show(self.value)}>"


@dataclass(frozen=True)
class MuRow:
    term: Term
    entries: Tuple[TableEntry, ...]


@dataclass(frozen=True)
class MuTable:
    subject: str
    variant: str
    rows: Tuple[MuRow, ...]

    def entry(self, row: int, pair: int) -> TableEntry:
        if not 0 <= row < len(self.rows):
            raise OutOfRangeError(f"Fila {row} fuera de rango (0..{len(self.rows) - 1})")
        entries = self.rows[row].entries
        if not 0 <= pair < len(entries):
            raise OutOfRangeError(f"Par {pair} fuera de rango en la fila {row} (0..{len(entries) - 1})")
        return entries[pair]


def _base_entry(variant: EncodingVariant, s: Term, value: MeaningValue) -> TableEntry:
    arg: Union[Term, Marker] = s if variant == EncodingVariant.PLAIN else MARKER
    return TableEntry(arg, value)


def materialize_table(session: EncodingSession) -> MuTable:
    """Una fila por término: <t, m(t)> primero y luego <μ(u), μ(t.u)> por cada u permitido."""
    frag = session.fragment
    rows = []
    for s in frag.terms:
        entries = [_base_entry(session.variant, s, session.meaning(s))]
        entries.extend(TableEntry(MuTag(u), MuTag(Node(s, u))) for u in frag.right_arguments[s])
        rows.append(MuRow(s, tuple(entries)))
    return MuTable(frag.name, session.variant.value, tuple(rows))


def check_table_agreement(session: EncodingSession, table: MuTable) -> List[str]:
    """Diferencias entre la tabla y la aplicación perezosa (vacío si coinciden)."""
    problems: List[str] = []
    for row in table.rows:
        f = session.mu(row.term)
        for entry in row.entries:
            try:
                if entry.is_base:
                    got = apply(f, entry.argument)
                    ok = _same(got, entry.value)
                else:
                    got = apply(f, session.mu(entry.argument.tag))
                    ok = isinstance(got, MuValue) and got.tag == entry.value.tag
            except UndefinedApplicationError as exc:
                problems.append(f"{_show(row.term)} {entry}: {exc}")
                continue
            if not ok:
                problems.append(f"{_show(row.term)} {entry}: la aplicación da {_show(got)}")
    return problems


def unfold(session: EncodingSession, s: Term, depth: int) -> frozenset:
    """μ(s) como conjunto de pares hasta profundidad `depth` (vista extensional finita)."""
    base = (("base", session.base_argument(s), session.meaning(s)),)
    if depth <= 0:
        return frozenset(base)
    pairs = tuple(
        ("pair", unfold(session, u, depth - 1), unfold(session, Node(s, u), depth - 1))
        for u in session.fragment.right_arguments[s]
    )
    return frozenset(base + pairs)


# =========================
# Enumerador efectivo
# =========================
@dataclass(frozen=True)
class TermStream:
    """Enumeración t(0), t(1), … de un lenguaje cerrado por composición.

    `terms` crea un iterador nuevo en cada llamada; `compositions(s)` itera los
    argumentos derechos u con s.u en el lenguaje, en orden de enumeración.
    `bound` es el tamaño si el flujo es finito.
    """

    terms: Callable[[], Iterator[Term]]
    compositions: Callable[[Term], Iterable[Term]]
    bound: Optional[int] = None
    name: str = "stream"

    @classmethod
    def from_fragment(cls, fragment: LanguageFragment) -> "TermStream":
        return cls(
            terms=lambda: iter(fragment.terms),
            compositions=lambda s: fragment.right_arguments.get(s, ()),
            bound=len(fragment.terms),
            name=fragment.name,
        )


def enumerate_table(
    stream: TermStream,
    m: Callable[[Term], MeaningValue],
    row: int,
    pair: int,
    variant: EncodingVariant = EncodingVariant.PLAIN,
    max_scan: int = 100_000,
) -> TableEntry:
    """El par `pair` de la ecuación `row`, sin materializar otras filas.

    Sólo el par base evalúa m, y sólo sobre t(row).
    """
    if row < 0 or pair < 0:
        raise OutOfRangeError("Índices negativos")
    if stream.bound is not None and row >= stream.bound:
        raise OutOfRangeError(f"Fila {row} fuera de rango: el flujo {stream.name} tiene {stream.bound} términos")
    if row >= max_scan:
        raise OutOfRangeError(f"Fila {row} supera el límite de recorrido {max_scan}")

    s = next(itertools.islice(stream.terms(), row, None), None)
    if s is None:
        raise OutOfRangeError(f"Fila {row} fuera de rango: el flujo {stream.name} se agotó")
    if pair == 0:
        return _base_entry(EncodingVariant(variant), s, m(s))

    scan = itertools.islice(stream.compositions(s), max_scan)
    u = next(itertools.islice(scan, pair - 1, None), None)
    if u is None:
        raise OutOfRangeError(f"Par {pair} fuera de rango en la fila {row}")
    return TableEntry(MuTag(u), MuTag(Node(s, u)))


__all__ = [
    "EncodingVariant",
    "EncodingSession",
    "MuValue",
    "MuTag",
    "MuTable",
    "MuRow",
    "TableEntry",
    "TermStream",
    "encode",
    "mu",
    "apply",
    "dollar_graph",
    "verify_homomorphism",
    "materialize_table",
    "check_table_agreement",
    "unfold",
    "enumerate_table",
]
