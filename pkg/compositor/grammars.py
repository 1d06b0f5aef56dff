#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
grammars.py — sistemas de ejemplo
---------------------------------
• Numerales en base 10 con dos gramáticas:
      ND:  N ← N D | D      (espina izquierda)
      DN:  N ← D N | D      (espina derecha)
  con la semántica intencionada (valor en base 10) y la "leída al revés".
• Coordinación booleana en forma prefija (+ = o, & = y) con la semántica
  natural y la retorcida, que asigna a a+(b&c) el valor de (a+b)&c.
• Léxico de modismos: high.wall vs high.seas.

Los ceros a la izquierda están permitidos: las producciones los generan.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from compositor.encoder import TermStream
from compositor.errors import CoordinationError, GrammarError, UnboundVariableError
from compositor.meanings import MeaningValue, Symbol
from compositor.term import (
    OPERATORS,
    BinOp,
    LanguageFragment,
    Leaf,
    Node,
    OpExpr,
    PrefixBracketing,
    Term,
    Var,
    from_prefix_form,
    leaf,
    leaf_sequence,
    parse_infix,
    parse_polish,
    render_term,
    right_nest,
    to_prefix_form,
)

DIGITS = "0123456789"


# ==========================================================
# 🔢 NUMERALES
# ==========================================================
class Grammar(str, Enum):
    ND = "nd"
    DN = "dn"


class NumeralSemantics(str, Enum):
    INTENDED = "intended"
    BACKWARDS = "backwards"


@dataclass(frozen=True)
class NumeralParse:
    digits: Tuple[int, ...]
    tree: Term
    grammar: Grammar

    @property
    def text(self) -> str:
        return "".join(str(d) for d in self.digits)


def _digit_tree(digits: Sequence[int], grammar: Grammar) -> Term:
    leaves = [leaf(str(d)) for d in digits]
    if grammar == Grammar.DN:
        return right_nest(leaves)
    out: Term = leaves[0]
    for lf in leaves[1:]:
        out = Node(out, lf)
    return out


def parse_numeral(s: str, grammar: Grammar | str) -> NumeralParse:
    """Análisis único de una cadena de dígitos según ND o DN."""
    grammar = Grammar(grammar)
    if not isinstance(s, str) or not s:
        raise GrammarError("Numeral vacío")
    bad = next((i for i, ch in enumerate(s) if ch not in DIGITS), None)
    if bad is not None:
        raise GrammarError(f"Carácter no numérico {s[bad]!r} en la posición {bad} de {s!r}")
    digits = tuple(int(ch) for ch in s)
    return NumeralParse(digits, _digit_tree(digits, grammar), grammar)


def numeral_from_term(t: Term, grammar: Grammar | str) -> NumeralParse:
    """Reconstruye el análisis a partir del árbol; GrammarError si no tiene la forma de la gramática."""
    grammar = Grammar(grammar)
    digits = []
    for a in leaf_sequence(t):
        if a.name not in DIGITS or len(a.name) != 1:
            raise GrammarError(f"{a.name!r} no es un dígito")
        digits.append(int(a.name))
    parse = NumeralParse(tuple(digits), _digit_tree(digits, grammar), grammar)
    if parse.tree != t:
        raise GrammarError(f"{render_term(t)} no es un árbol de la gramática {grammar.value.upper()}")
    return parse


def _value_and_length(t: Term, grammar: Grammar) -> Tuple[int, int]:
    if isinstance(t, Leaf):
        return int(t.atom.name), 1
    if grammar == Grammar.ND:
        # μ(N D) = 10·μ(N) + μ(D)
        n, ln = _value_and_length(t.left, grammar)
        return 10 * n + int(t.right.atom.name), ln + 1
    # μ(D N) = μ(D)·10^length(N) + μ(N)
    n, ln = _value_and_length(t.right, grammar)
    return int(t.left.atom.name) * 10**ln + n, ln + 1


def intended_value(p: NumeralParse) -> int:
    """Valor en base 10 de la cadena, calculado con la recurrencia de su gramática."""
    return _value_and_length(p.tree, p.grammar)[0]


def backwards_value(p: NumeralParse) -> int:
    """μ(D N) = 10·μ(N) + μ(D): el número leído al revés (sólo DN)."""
    if p.grammar != Grammar.DN:
        raise GrammarError("La lectura al revés está definida sobre análisis DN")

    def go(t: Term) -> int:
        if isinstance(t, Leaf):
            return int(t.atom.name)
        return 10 * go(t.right) + int(t.left.atom.name)

    return go(p.tree)


def numeral_value(p: NumeralParse, semantics: NumeralSemantics | str) -> int:
    if NumeralSemantics(semantics) == NumeralSemantics.BACKWARDS:
        return backwards_value(p)
    return intended_value(p)


def numeral_strings(max_length: Optional[int] = None) -> Iterator[str]:
    """Cadenas de dígitos en orden shortlex: 0..9, 00..99, 000.. (infinito si max_length es None)."""
    lengths = itertools.count(1) if max_length is None else range(1, max_length + 1)
    for n in lengths:
        for combo in itertools.product(DIGITS, repeat=n):
            yield "".join(combo)


def numeral_fragment(grammar: Grammar | str, max_length: int, name: Optional[str] = None) -> LanguageFragment:
    """Todos los numerales de longitud ≤ max_length, en orden shortlex."""
    grammar = Grammar(grammar)
    if max_length < 1:
        raise GrammarError("max_length debe ser ≥ 1")
    roots = (parse_numeral(s, grammar).tree for s in numeral_strings(max_length))
    return LanguageFragment.closure_of(roots, name=name or f"{grammar.value}-{max_length}")


def numeral_meanings(
    fragment: LanguageFragment,
    grammar: Grammar | str,
    semantics: NumeralSemantics | str = NumeralSemantics.INTENDED,
) -> Dict[Term, MeaningValue]:
    return {t: numeral_value(numeral_from_term(t, grammar), semantics) for t in fragment.terms}


def numeral_stream(grammar: Grammar | str) -> TermStream:
    """Flujo infinito de numerales (shortlex) para el enumerador efectivo."""
    grammar = Grammar(grammar)
    digit_leaves = tuple(leaf(d) for d in DIGITS)

    def terms() -> Iterator[Term]:
        return (parse_numeral(s, grammar).tree for s in numeral_strings())

    def compositions(t: Term) -> Iterable[Term]:
        if grammar == Grammar.ND:
            return digit_leaves          # N ← N D
        if isinstance(t, Leaf):
            return terms()               # N ← D N
        return ()

    return TermStream(terms=terms, compositions=compositions, bound=None, name=f"{grammar.value}-stream")


def numeral_meaning_function(grammar: Grammar | str, semantics: NumeralSemantics | str = NumeralSemantics.INTENDED):
    """m calculable bajo demanda para numeral_stream."""
    return lambda t: numeral_value(numeral_from_term(t, grammar), semantics)


# ==========================================================
# 🔀 COORDINACIÓN
# ==========================================================
class CoordinationSemantics(str, Enum):
    NATURAL = "natural"
    TWISTED = "twisted"


BoolAssignment = Mapping[str, bool]


def _lookup(env: BoolAssignment, name: str) -> bool:
    if name not in env:
        raise UnboundVariableError(f"Variable sin valor: {name!r}")
    return bool(env[name])


def _natural(e: OpExpr, env: BoolAssignment) -> bool:
    if isinstance(e, Var):
        return _lookup(env, e.name)
    left, right = _natural(e.left, env), _natural(e.right, env)
    if e.op == "+":
        return left or right
    if e.op == "&":
        return left and right
    raise CoordinationError(f"Operador desconocido: {e.op!r}")


def _twisted(e: OpExpr, env: BoolAssignment) -> bool:
    if isinstance(e, Var):
        return _lookup(env, e.name)
    if isinstance(e.left, Var) and isinstance(e.right, Var):
        # entre variables los conectores se comportan como siempre
        return _natural(e, env)
    r = e.right
    if (
        e.op == "+"
        and isinstance(e.left, Var)
        and isinstance(r, BinOp)
        and r.op == "&"
        and isinstance(r.left, Var)
        and isinstance(r.right, Var)
    ):
        # a+(b&c) recibe el significado de (a+b)&c
        return (_lookup(env, e.left.name) or _lookup(env, r.left.name)) and _lookup(env, r.right.name)
    raise CoordinationError("La semántica retorcida sólo cubre x, x+y, x&y y x+(y&z)")


def evaluate_expression(e: OpExpr, env: BoolAssignment, semantics: CoordinationSemantics | str) -> bool:
    if CoordinationSemantics(semantics) == CoordinationSemantics.TWISTED:
        return _twisted(e, env)
    return _natural(e, env)


def eval_coordination(
    expr: Term,
    env: BoolAssignment,
    semantics: CoordinationSemantics | str = CoordinationSemantics.NATURAL,
    bracketing: PrefixBracketing = PrefixBracketing.RIGHT,
) -> bool:
    """Evalúa un término prefijo (p. ej. +.a.&.b.c) con la semántica pedida."""
    return evaluate_expression(from_prefix_form(expr, bracketing), env, semantics)


def coordination_fragment(
    triples: Sequence[Tuple[str, str, str]] = (("a", "b", "c"),),
    include_disjunction: bool = False,
    bracketing: PrefixBracketing = PrefixBracketing.RIGHT,
    name: Optional[str] = None,
) -> LanguageFragment:
    """Clausura de x+(y&z) en forma prefija para cada terna (x, y, z).

    Con include_disjunction se añade también x+y (y con ello x.y).
    """
    roots: List[Term] = []
    for x, y, z in triples:
        roots.append(to_prefix_form(parse_infix(f"{x}+({y}&{z})"), bracketing))
        if include_disjunction:
            roots.append(to_prefix_form(parse_infix(f"{x}+{y}"), bracketing))
    return LanguageFragment.closure_of(roots, name=name or ("coordination-ext" if include_disjunction else "coordination"))


def _segments(tokens: Sequence[str], env: BoolAssignment) -> List[MeaningValue]:
    out: List[MeaningValue] = []
    i = 0
    while i < len(tokens):
        try:
            expr, i = parse_polish(tokens, i)
        except CoordinationError:
            # operador al que le faltan argumentos: aplicación parcial
            out.append(Symbol(OPERATORS[tokens[i]], tuple(_segments(tokens[i + 1:], env))))
            break
        out.append(evaluate_expression(expr, env, CoordinationSemantics.TWISTED))
    return out


def coordination_meanings(
    fragment: LanguageFragment,
    env: BoolAssignment,
    bracketing: PrefixBracketing = PrefixBracketing.RIGHT,
) -> Dict[Term, MeaningValue]:
    """m del ejemplo de coordinación.

    Expresión completa → su valor con la semántica retorcida; conector solo →
    símbolo ("or", "and"); secuencia de expresiones (b.c, a.&.b.c) → tupla de
    sus valores, p. ej. m(b.c) = <m(b), m(c)>.
    """
    out: Dict[Term, MeaningValue] = {}
    for t in fragment.terms:
        if isinstance(t, Leaf) and t.atom.name in OPERATORS:
            out[t] = Symbol(OPERATORS[t.atom.name])
            continue
        try:
            out[t] = eval_coordination(t, env, CoordinationSemantics.TWISTED, bracketing)
            continue
        except UnboundVariableError:
            raise
        except CoordinationError:
            pass
        segs = _segments([a.name for a in leaf_sequence(t)], env)
        out[t] = segs[0] if len(segs) == 1 else tuple(segs)
    return out


def all_assignments(variables: Sequence[str]) -> Iterator[Dict[str, bool]]:
    """Las 2^n asignaciones en orden de tabla de verdad (1 antes que 0)."""
    for values in itertools.product((True, False), repeat=len(variables)):
        yield dict(zip(variables, values))


# ==========================================================
# 🌊 MODISMOS
# ==========================================================
def idiom_fragment(
    nouns: Sequence[str] = ("wall", "seas"),
    modifier: str = "high",
    name: str = "idioms",
) -> LanguageFragment:
    """wall, seas, high, high.wall, high.seas (se pueden añadir más sustantivos)."""
    noun_leaves = [leaf(n) for n in nouns]
    mod = leaf(modifier)
    terms: List[Term] = [*noun_leaves, mod, *(Node(mod, n) for n in noun_leaves)]
    return LanguageFragment.from_terms(terms, name=name)


def idiom_meanings(
    fragment: LanguageFragment,
    idioms: Optional[Mapping[str, str]] = None,
) -> Dict[Term, MeaningValue]:
    """m(X) = X, m(high.X) = high(m(X)) salvo los modismos: m(high.seas) = open(m(seas))."""
    idioms = {"seas": "open"} if idioms is None else dict(idioms)
    out: Dict[Term, MeaningValue] = {}
    for t in fragment.terms:
        if isinstance(t, Leaf):
            out[t] = Symbol(t.atom.name)
        elif isinstance(t.left, Leaf) and isinstance(t.right, Leaf):
            head = idioms.get(t.right.atom.name, t.left.atom.name)
            out[t] = Symbol(head, (Symbol(t.right.atom.name),))
        else:
            raise GrammarError(f"{render_term(t)} no pertenece al léxico de modismos")
    return out
