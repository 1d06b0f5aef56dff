# -*- coding: utf-8 -*-
"""Generadores aleatorios de términos, fragmentos y asignaciones m (para pruebas y demos)."""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from compositor.meanings import MeaningValue, Symbol
from compositor.term import LanguageFragment, Node, Term, leaf, subterms

DEFAULT_ALPHABET = ("a", "b", "c", "d", "e")


@lru_cache(maxsize=None)
def _bracketings(names: Tuple[str, ...]) -> Tuple[Term, ...]:
    if len(names) == 1:
        return (leaf(names[0]),)
    out: List[Term] = []
    for cut in range(1, len(names)):
        for left in _bracketings(names[:cut]):
            for right in _bracketings(names[cut:]):
                out.append(Node(left, right))
    return tuple(out)


def all_bracketings(names: Sequence[str]) -> List[Term]:
    """Todos los árboles binarios con esa secuencia de hojas (número de Catalan)."""
    if not names:
        raise ValueError("Hace falta al menos una hoja")
    return list(_bracketings(tuple(names)))


def random_term(rng: random.Random, alphabet: Sequence[str] = DEFAULT_ALPHABET, max_leaves: int = 4) -> Term:
    n = rng.randint(1, max_leaves)
    names = [rng.choice(alphabet) for _ in range(n)]

    def build(lo: int, hi: int) -> Term:
        if hi - lo == 1:
            return leaf(names[lo])
        cut = rng.randint(lo + 1, hi - 1)
        return Node(build(lo, cut), build(cut, hi))

    return build(0, n)


def random_fragment(
    rng: random.Random,
    max_terms: int = 20,
    alphabet: Sequence[str] = DEFAULT_ALPHABET,
    name: str = "random",
) -> LanguageFragment:
    """Clausura hacia abajo de raíces aleatorias, sin pasar de max_terms términos."""
    ordered: List[Term] = []
    seen = set()
    for _ in range(rng.randint(1, 8)):
        closure = [t for t in dict.fromkeys(subterms(random_term(rng, alphabet))) if t not in seen]
        if len(ordered) + len(closure) > max_terms:
            continue
        ordered.extend(closure)
        seen.update(closure)
    if not ordered:
        ordered.append(leaf(alphabet[0]))
    return LanguageFragment.from_terms(ordered, name=name)


def random_meaning(rng: random.Random, depth: int = 0) -> MeaningValue:
    kind = rng.choice(("int", "bool", "rational", "symbol", "tuple") if depth < 2 else ("int", "bool", "symbol"))
    if kind == "int":
        return rng.randint(-50, 50)
    if kind == "bool":
        return rng.random() < 0.5
    if kind == "rational":
        return Fraction(rng.randint(-20, 20), rng.randint(1, 9))
    if kind == "symbol":
        args = tuple(random_meaning(rng, depth + 1) for _ in range(rng.randint(0, 2))) if depth < 2 else ()
        return Symbol(rng.choice(("open", "high", "red", "f", "g")), args)
    return tuple(random_meaning(rng, depth + 1) for _ in range(rng.randint(0, 3)))


def random_meanings(rng: random.Random, fragment: LanguageFragment) -> Dict[Term, MeaningValue]:
    """m arbitraria: sin relación alguna entre m(s.t), m(s) y m(t)."""
    return {t: random_meaning(rng) for t in fragment.terms}


def permuted_meanings(rng: random.Random, m: Dict[Term, MeaningValue]) -> Dict[Term, MeaningValue]:
    """Los mismos valores repartidos al azar entre los términos."""
    keys = list(m)
    values = list(m.values())
    rng.shuffle(values)
    return dict(zip(keys, values))
