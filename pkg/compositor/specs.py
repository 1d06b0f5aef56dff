# -*- coding: utf-8 -*-
"""
Ficheros de especificación (YAML o JSON) → objetos del dominio.

Tres clases de fichero:
  language    fragmento explícito (atoms, terms, pairs, meanings) o `generator`
  samples     lista `samples` o bloque `source`
  refutation  grammar + max_degree
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, List, Mapping, Optional

from compositor.encoder import EncodingVariant
from compositor.errors import CompositorError, SpecError
from compositor.grammars import (
    Grammar,
    NumeralSemantics,
    coordination_fragment,
    coordination_meanings,
    idiom_fragment,
    idiom_meanings,
    numeral_fragment,
    numeral_meanings,
)
from compositor.meanings import MeaningValue, parse_meaning
from compositor.systematicity import SamplePoint, samples_from_source
from compositor.term import Atom, LanguageFragment, PrefixBracketing, Term, make_term
from utils.helpers import PathLike, load_structured

KINDS = ("language", "samples", "refutation")

# valores que se fijan en la especificación canónica si no vienen dados
SPEC_DEFAULTS: Dict[str, Dict[str, Any]] = {
    "language": {"variant": "plain"},
    "samples": {"class": "poly2", "degree": 1},
    "refutation": {"grammar": "dn", "max_degree": 4},
}


@dataclass(frozen=True)
class LanguageJob:
    fragment: LanguageFragment
    meanings: Dict[Term, MeaningValue]
    variant: EncodingVariant


def load_spec(path: PathLike) -> Dict[str, Any]:
    """Lee el fichero; FileNotFoundError/OSError se propagan (E/S), el resto es SpecError."""
    try:
        raw = load_structured(path)
    except (FileNotFoundError, PermissionError, IsADirectoryError):
        raise
    except Exception as exc:
        raise SpecError(f"No se pudo interpretar {path}: {exc}") from None
    if not isinstance(raw, dict):
        raise SpecError(f"{path}: se esperaba un objeto en la raíz")
    return raw


def spec_kind(raw: Mapping[str, Any]) -> str:
    kind = raw.get("kind")
    if kind is not None:
        if kind not in KINDS:
            raise SpecError(f"Tipo de especificación desconocido: {kind!r}")
        return str(kind)
    if "samples" in raw or "source" in raw:
        return "samples"
    if "terms" in raw or "generator" in raw:
        return "language"
    if "max_degree" in raw:
        return "refutation"
    raise SpecError("No se reconoce el tipo de especificación (faltan terms, generator, samples o source)")


def _term(raw: Any) -> Term:
    if not isinstance(raw, str):
        raise SpecError(f"Se esperaba un término como texto: {raw!r}")
    return make_term(raw)


# =========================
# Lenguajes
# =========================
def _explicit_language(spec: Mapping[str, Any], name: str) -> tuple[LanguageFragment, Dict[Term, MeaningValue]]:
    terms = [_term(t) for t in spec.get("terms") or []]
    if not terms:
        raise SpecError("La lista de términos está vacía")
    derived = LanguageFragment.from_terms(terms, name=name)
    atoms = derived.atoms if "atoms" not in spec else tuple(Atom(str(a)) for a in spec["atoms"] or [])
    pairs = derived.allowed_pairs
    if "pairs" in spec:
        pairs = []
        for p in spec.get("pairs") or []:
            if not isinstance(p, (list, tuple)) or len(p) != 2:
                raise SpecError(f"Par mal formado: {p!r}")
            pairs.append((_term(p[0]), _term(p[1])))
    # los pares declarados deben coincidir con las descomposiciones de los términos
    fragment = LanguageFragment(tuple(atoms), derived.terms, tuple(pairs), name=name)

    raw_meanings = spec.get("meanings") or {}
    if not isinstance(raw_meanings, dict):
        raise SpecError("`meanings` debe ser un objeto término → significado")
    meanings = {_term(k): parse_meaning(v) for k, v in raw_meanings.items()}
    return fragment, meanings


def _generated_language(gen: Mapping[str, Any], name: Optional[str]) -> tuple[LanguageFragment, Dict[Term, MeaningValue]]:
    family = gen.get("family")
    if family == "numerals":
        grammar = Grammar(str(gen.get("grammar", "nd")).lower())
        fragment = numeral_fragment(grammar, int(gen.get("max_length", 2)), name=name)
        semantics = NumeralSemantics(str(gen.get("semantics", "intended")).lower())
        return fragment, numeral_meanings(fragment, grammar, semantics)
    if family == "idioms":
        fragment = idiom_fragment(tuple(gen.get("nouns", ("wall", "seas"))), str(gen.get("modifier", "high")),
                                  name=name or "idioms")
        return fragment, idiom_meanings(fragment, gen.get("idioms"))
    if family == "coordination":
        bracketing = PrefixBracketing(str(gen.get("bracketing", "right")).lower())
        triples = [tuple(t) for t in gen.get("triples", [("a", "b", "c")])]
        if any(len(t) != 3 for t in triples):
            raise SpecError("Cada terna de coordinación necesita tres variables")
        fragment = coordination_fragment(triples, bool(gen.get("include_disjunction", False)), bracketing, name=name)
        env = {str(k): bool(v) for k, v in (gen.get("env") or {}).items()}
        return fragment, coordination_meanings(fragment, env, bracketing)
    raise SpecError(f"Familia de lenguaje desconocida: {family!r}")


def build_language(spec: Mapping[str, Any]) -> LanguageJob:
    """Fragmento, m y variante de una especificación de lenguaje."""
    name = spec.get("name")
    try:
        variant = EncodingVariant(str(spec.get("variant", "plain")).lower())
    except ValueError:
        raise SpecError(f"Variante desconocida: {spec.get('variant')!r}") from None
    try:
        if "generator" in spec:
            fragment, meanings = _generated_language(spec["generator"] or {}, name)
        else:
            fragment, meanings = _explicit_language(spec, name or "fragment")
    except CompositorError:
        raise
    except (ValueError, TypeError) as exc:
        raise SpecError(f"Especificación de lenguaje no válida: {exc}") from None
    return LanguageJob(fragment, meanings, variant)


# =========================
# Muestras
# =========================
FUNCTION_CLASSES = ("poly2", "boolfun")


@dataclass(frozen=True)
class SamplesSettings:
    function_class: str
    degree: int
    budget: Optional[int]


def _integer(spec: Mapping[str, Any], key: str) -> int:
    value = spec.get(key)
    if isinstance(value, bool):
        raise SpecError(f"`{key}` debe ser un entero: {value!r}")
    try:
        return int(value)
    except (TypeError, ValueError):
        raise SpecError(f"`{key}` debe ser un entero: {value!r}") from None


def samples_settings(spec: Mapping[str, Any]) -> SamplesSettings:
    """Clase de funciones, grado y presupuesto de una especificación de muestras canónica."""
    fclass = str(spec.get("class", "poly2")).lower()
    if fclass not in FUNCTION_CLASSES:
        raise SpecError(f"Clase de funciones desconocida: {fclass!r} (opciones: {', '.join(FUNCTION_CLASSES)})")
    budget = _integer(spec, "budget") if spec.get("budget") is not None else None
    return SamplesSettings(fclass, _integer(spec, "degree"), budget)


def _explicit_samples(raw: Any) -> List[SamplePoint]:
    if not isinstance(raw, list) or not raw:
        raise SpecError("`samples` debe ser una lista no vacía")
    out = []
    for i, item in enumerate(raw):
        if not isinstance(item, dict) or "args" not in item or "target" not in item:
            raise SpecError(f"Muestra {i} sin `args` o `target`")
        args = item["args"] if isinstance(item["args"], list) else [item["args"]]
        out.append(
            SamplePoint(
                tuple(parse_meaning(a) for a in args),
                parse_meaning(item["target"]),
                str(item.get("label", "")),
            )
        )
    return out


def build_samples(spec: Mapping[str, Any]) -> List[SamplePoint]:
    try:
        if "source" in spec:
            source = spec["source"]
            if not isinstance(source, dict):
                raise SpecError("`source` debe ser un objeto")
            return samples_from_source(source)
        return _explicit_samples(spec.get("samples"))
    except CompositorError:
        raise
    except (ValueError, TypeError) as exc:
        raise SpecError(f"Especificación de muestras no válida: {exc}") from None


def refutation_settings(spec: Mapping[str, Any]) -> tuple[Grammar, int]:
    try:
        grammar = Grammar(str(spec.get("grammar", "dn")).lower())
    except ValueError as exc:
        raise SpecError(f"Especificación de refutación no válida: {exc}") from None
    return grammar, _integer(spec, "max_degree")
