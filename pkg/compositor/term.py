#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
term.py — árboles de análisis y fragmentos de lenguaje
-------------------------------------------------------
• Atom / Leaf / Node: árboles binarios NO asociativos sobre un alfabeto
• Sintaxis de superficie totalmente parentizada: "((a.b).c)"
• LanguageFragment: conjunto finito de términos con concatenación parcial
• DollarTerm: s.$ con el marcador de fin de expresión
• Forma prefija de expresiones con operadores: a+(b&c) → +.a.&.b.c

Convención prefija por defecto (RIGHT): la secuencia polaca de tokens se
anida a la derecha, "+.a.&.b.c" = (+.(a.(&.(b.c)))). Es la que reproduce la
tabla de ecuaciones de la coordinación (μ(b) contiene <μ(c), μ(b.c)>).
LEFT anida como aplicación currificada: op.x.y = ((op.x).y).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple, Union

from lark import Lark, Transformer
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken

from compositor.errors import (
    CoordinationError,
    FragmentError,
    TermSyntaxError,
    UndefinedCompositionError,
)

SEPARATOR = "."
MARKER_CHAR = "$"
# además de "." y "$", la sintaxis parentizada reserva los paréntesis y el espacio
_FORBIDDEN = set(SEPARATOR + MARKER_CHAR + "()")


# =========================
# Tipos
# =========================
@dataclass(frozen=True, order=True)
class Atom:
    name: str

    def __post_init__(self) -> None:
        if not isinstance(self.name, str) or not self.name:
            raise TermSyntaxError("Átomo vacío")
        bad = [ch for ch in self.name if ch in _FORBIDDEN or not ch.isprintable() or ch.isspace()]
        if bad:
            raise TermSyntaxError(f"Carácter reservado {bad[0]!r} en el átomo {self.name!r}")

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Leaf:
    atom: Atom

    def __str__(self) -> str:
        return render_term(self)


@dataclass(frozen=True)
class Node:
    left: "Term"
    right: "Term"

    def __str__(self) -> str:
        return render_term(self)


Term = Union[Leaf, Node]


@dataclass(frozen=True)
class Marker:
    """El marcador $ (sin campos: todas las instancias son iguales)."""

    def __str__(self) -> str:
        return MARKER_CHAR

    def __repr__(self) -> str:
        return "Marker($)"


MARKER = Marker()


@dataclass(frozen=True)
class DollarTerm:
    """body.$ — el marcador aparece una vez y al final."""

    body: Term

    def __post_init__(self) -> None:
        if not isinstance(self.body, (Leaf, Node)):
            raise TermSyntaxError("El cuerpo de s.$ debe ser un término")

    def __str__(self) -> str:
        return f"({render_term(self.body)}{SEPARATOR}{MARKER_CHAR})"


def leaf(name: str) -> Leaf:
    return Leaf(Atom(name))


def is_term(x: object) -> bool:
    return isinstance(x, (Leaf, Node))


# =========================
# Recorridos
# =========================
def render_term(t: Term) -> str:
    """Leaf → nombre; Node → (izq.der)."""
    if isinstance(t, Leaf):
        return t.atom.name
    parts: List[str] = []
    stack: List[Union[Term, str]] = [t]
    while stack:
        cur = stack.pop()
        if isinstance(cur, str):
            parts.append(cur)
        elif isinstance(cur, Leaf):
            parts.append(cur.atom.name)
        else:
            stack.extend([")", cur.right, SEPARATOR, cur.left, "("])
    return "".join(parts)


def leaf_sequence(t: Term) -> List[Atom]:
    out: List[Atom] = []
    stack: List[Term] = [t]
    while stack:
        cur = stack.pop()
        if isinstance(cur, Leaf):
            out.append(cur.atom)
        else:
            stack.append(cur.right)
            stack.append(cur.left)
    return out


def subterms(t: Term) -> Iterator[Term]:
    """Subtérminos en post-orden (hijos antes que el padre), con repeticiones."""
    if isinstance(t, Node):
        yield from subterms(t.left)
        yield from subterms(t.right)
    yield t


def depth(t: Term) -> int:
    if isinstance(t, Leaf):
        return 0
    return 1 + max(depth(t.left), depth(t.right))


# =========================
# Parser de superficie
# =========================
_TERM_GRAMMAR = r"""
start: term
?term: atom
     | "(" term "." term ")"   -> pair
atom: ATOM
ATOM: /[^.$()\s]+/
%import common.WS
%ignore WS
"""


class _TermBuilder(Transformer):
    def atom(self, items):
        return Leaf(Atom(str(items[0])))

    def pair(self, items):
        return Node(items[0], items[1])

    def start(self, items):
        return items[0]


_term_parser = Lark(_TERM_GRAMMAR, parser="lalr")


def _syntax_error(spec: str, exc: UnexpectedInput) -> TermSyntaxError:
    if isinstance(exc, UnexpectedEOF):
        return TermSyntaxError(f"Expresión incompleta: {spec!r}", position=len(spec))
    pos = getattr(exc, "pos_in_stream", None)
    if isinstance(exc, UnexpectedCharacters):
        ch = spec[pos] if pos is not None and pos < len(spec) else "?"
        return TermSyntaxError(f"Carácter inesperado {ch!r} en {spec!r}", position=pos)
    if isinstance(exc, UnexpectedToken):
        if exc.token.type == "$END":
            return TermSyntaxError(f"Expresión incompleta: {spec!r}", position=len(spec))
        return TermSyntaxError(f"Símbolo inesperado {str(exc.token)!r} en {spec!r}", position=pos)
    return TermSyntaxError(f"Expresión mal formada: {spec!r}", position=pos)


def make_term(spec: str) -> Term:
    """Convierte "(high.seas)" o "((a.b).c)" en el árbol correspondiente.

    Inversa de render_term: make_term(render_term(t)) == t.
    """
    if not isinstance(spec, str) or not spec.strip():
        raise TermSyntaxError("Expresión vacía", position=0)
    try:
        tree = _term_parser.parse(spec)
    except UnexpectedInput as exc:
        raise _syntax_error(spec, exc) from None
    return _TermBuilder().transform(tree)


# =========================
# Fragmentos
# =========================
@dataclass(frozen=True)
class LanguageFragment:
    """Fragmento finito cerrado hacia abajo; el orden de `terms` es el de enumeración t(0), t(1), …"""

    atoms: Tuple[Atom, ...]
    terms: Tuple[Term, ...]
    allowed_pairs: Tuple[Tuple[Term, Term], ...]
    name: str = "fragment"

    def __post_init__(self) -> None:
        if len(set(self.terms)) != len(self.terms):
            raise FragmentError(f"[{self.name}] términos repetidos")
        if len(set(self.allowed_pairs)) != len(self.allowed_pairs):
            raise FragmentError(f"[{self.name}] pares repetidos")
        term_set = set(self.terms)
        for a in self.atoms:
            if Leaf(a) not in term_set:
                raise FragmentError(f"[{self.name}] el átomo {a.name!r} no está entre los términos")
        for s, t in self.allowed_pairs:
            if s not in term_set or t not in term_set:
                raise FragmentError(
                    f"[{self.name}] el par ({render_term(s)}, {render_term(t)}) usa términos fuera del fragmento"
                )
            if Node(s, t) not in term_set:
                raise FragmentError(
                    f"[{self.name}] el par permitido no produce un término del fragmento: "
                    f"{render_term(Node(s, t))}"
                )
        pair_set = set(self.allowed_pairs)
        atom_set = set(self.atoms)
        for t in self.terms:
            if isinstance(t, Node) and (t.left, t.right) not in pair_set:
                raise FragmentError(f"[{self.name}] {render_term(t)} no se descompone en un par permitido")
            if isinstance(t, Leaf) and t.atom not in atom_set:
                raise FragmentError(f"[{self.name}] la hoja {t.atom.name!r} no está en el alfabeto")

    @cached_property
    def term_set(self) -> frozenset:
        return frozenset(self.terms)

    @cached_property
    def pair_set(self) -> frozenset:
        return frozenset(self.allowed_pairs)

    @cached_property
    def index(self) -> Dict[Term, int]:
        return {t: i for i, t in enumerate(self.terms)}

    @cached_property
    def right_arguments(self) -> Dict[Term, Tuple[Term, ...]]:
        """Para cada s, los t con (s, t) permitido, en orden de enumeración de t."""
        out: Dict[Term, List[Term]] = {t: [] for t in self.terms}
        for s, t in sorted(self.allowed_pairs, key=lambda p: self.index[p[1]]):
            out[s].append(t)
        return {s: tuple(ts) for s, ts in out.items()}

    def __contains__(self, t: object) -> bool:
        return t in self.term_set

    def __len__(self) -> int:
        return len(self.terms)

    # ---------- constructores ----------
    @classmethod
    def from_terms(cls, terms: Iterable[Term], name: str = "fragment") -> "LanguageFragment":
        """Deriva alfabeto y pares de los términos (que deben estar cerrados hacia abajo)."""
        ordered: List[Term] = []
        seen = set()
        for t in terms:
            if t not in seen:
                seen.add(t)
                ordered.append(t)
        atoms: List[Atom] = []
        for t in ordered:
            if isinstance(t, Leaf) and t.atom not in atoms:
                atoms.append(t.atom)
        pairs = tuple((t.left, t.right) for t in ordered if isinstance(t, Node))
        return cls(tuple(atoms), tuple(ordered), pairs, name=name)

    @classmethod
    def closure_of(cls, roots: Iterable[Term], name: str = "fragment") -> "LanguageFragment":
        """Clausura hacia abajo de `roots`, en post-orden y sin repeticiones."""
        ordered: List[Term] = []
        seen = set()
        for r in roots:
            for t in subterms(r):
                if t not in seen:
                    seen.add(t)
                    ordered.append(t)
        return cls.from_terms(ordered, name=name)


def concat(frag: LanguageFragment, s: Term, t: Term) -> Term:
    """s.t si el par está en el dominio de la operación parcial."""
    if s not in frag or t not in frag:
        raise UndefinedCompositionError(
            f"Composición indefinida: {render_term(s)} o {render_term(t)} no pertenece a {frag.name}"
        )
    if (s, t) not in frag.pair_set:
        raise UndefinedCompositionError(
            f"Composición indefinida: ({render_term(s)}, {render_term(t)}) no es un par permitido"
        )
    return Node(s, t)


# =========================
# Expresiones con operadores
# =========================
OPERATORS: Dict[str, str] = {"+": "or", "&": "and"}


@dataclass(frozen=True)
class Var:
    name: str

    def __post_init__(self) -> None:
        Atom(self.name)
        if self.name in OPERATORS:
            raise CoordinationError(f"{self.name!r} es un operador, no una variable")


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "OpExpr"
    right: "OpExpr"


OpExpr = Union[Var, BinOp]


class PrefixBracketing(str, Enum):
    RIGHT = "right"
    LEFT = "left"


_INFIX_GRAMMAR = r"""
?start: disj
?disj: conj
     | disj "+" conj      -> or_
?conj: primary
     | conj "&" primary   -> and_
?primary: VAR             -> var
        | "(" disj ")"
VAR: /[A-Za-z_][A-Za-z0-9_]*/
%import common.WS
%ignore WS
"""


class _InfixBuilder(Transformer):
    def var(self, items):
        return Var(str(items[0]))

    def or_(self, items):
        return BinOp("+", items[0], items[1])

    def and_(self, items):
        return BinOp("&", items[0], items[1])


_infix_parser = Lark(_INFIX_GRAMMAR, parser="lalr")


def parse_infix(text: str) -> OpExpr:
    """"a+(b&c)" → BinOp("+", Var a, BinOp("&", Var b, Var c)); & liga más que +."""
    try:
        tree = _infix_parser.parse(text)
    except UnexpectedInput as exc:
        raise _syntax_error(text, exc) from None
    return _InfixBuilder().transform(tree)


def render_infix(e: OpExpr) -> str:
    if isinstance(e, Var):
        return e.name

    def side(x: OpExpr) -> str:
        return render_infix(x) if isinstance(x, Var) else f"({render_infix(x)})"

    return f"{side(e.left)}{e.op}{side(e.right)}"


def _polish_tokens(e: OpExpr) -> List[str]:
    if isinstance(e, Var):
        return [e.name]
    if e.op not in OPERATORS:
        raise CoordinationError(f"Operador desconocido: {e.op!r}")
    return [e.op] + _polish_tokens(e.left) + _polish_tokens(e.right)


def right_nest(items: Sequence[Term]) -> Term:
    """[x1, …, xn] → (x1.(x2.(… .xn)))."""
    if not items:
        raise TermSyntaxError("Secuencia vacía")
    out = items[-1]
    for t in reversed(items[:-1]):
        out = Node(t, out)
    return out


def right_spine(t: Term) -> List[Term]:
    """Inversa de right_nest: hijos izquierdos de la espina derecha más la hoja final."""
    out: List[Term] = []
    while isinstance(t, Node):
        out.append(t.left)
        t = t.right
    out.append(t)
    return out


def to_prefix_form(expr: OpExpr, bracketing: PrefixBracketing = PrefixBracketing.RIGHT) -> Term:
    """Codifica una expresión con operadores binarios como término prefijo.

    RIGHT: a+(b&c) → (+.(a.(&.(b.c)))), la lectura "+.a.&.b.c".
    LEFT:  op x y → ((op.x').y').
    """
    if bracketing == PrefixBracketing.RIGHT:
        return right_nest([leaf(tok) for tok in _polish_tokens(expr)])
    if isinstance(expr, Var):
        return leaf(expr.name)
    if expr.op not in OPERATORS:
        raise CoordinationError(f"Operador desconocido: {expr.op!r}")
    return Node(
        Node(leaf(expr.op), to_prefix_form(expr.left, bracketing)),
        to_prefix_form(expr.right, bracketing),
    )


def parse_polish(tokens: Sequence[str], start: int = 0) -> Tuple[OpExpr, int]:
    """Lee una expresión polaca desde `start`; devuelve (expresión, siguiente índice)."""
    if start >= len(tokens):
        raise CoordinationError("Expresión prefija incompleta")
    tok = tokens[start]
    if tok in OPERATORS:
        left, nxt = parse_polish(tokens, start + 1)
        right, nxt = parse_polish(tokens, nxt)
        return BinOp(tok, left, right), nxt
    return Var(tok), start + 1


def from_prefix_form(t: Term, bracketing: PrefixBracketing = PrefixBracketing.RIGHT) -> OpExpr:
    """Inversa de to_prefix_form; CoordinationError si t no codifica una expresión completa."""
    if bracketing == PrefixBracketing.RIGHT:
        tokens = [a.name for a in leaf_sequence(t)]
        expr, used = parse_polish(tokens)
        if used != len(tokens):
            raise CoordinationError(f"{render_term(t)} contiene más de una expresión")
        if to_prefix_form(expr, bracketing) != t:
            raise CoordinationError(f"{render_term(t)} no sigue el anidamiento prefijo a la derecha")
        return expr
    if isinstance(t, Leaf):
        if t.atom.name in OPERATORS:
            raise CoordinationError(f"Operador {t.atom.name!r} sin argumentos")
        return Var(t.atom.name)
    head = t.left
    if isinstance(head, Node) and isinstance(head.left, Leaf) and head.left.atom.name in OPERATORS:
        return BinOp(
            head.left.atom.name,
            from_prefix_form(head.right, bracketing),
            from_prefix_form(t.right, bracketing),
        )
    raise CoordinationError(f"{render_term(t)} no es una aplicación ((op.x).y)")
