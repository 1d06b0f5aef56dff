# -*- coding: utf-8 -*-
"""
Valores de significado: enteros, racionales exactos, booleanos, aplicaciones
simbólicas (constructor + argumentos) y tuplas.

La igualdad es estructural *y* respeta el tipo: True no es 1 y Fraction(2)
no es 2 (ver same_meaning).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Tuple, Union

from lark import Lark, Transformer
from lark.exceptions import UnexpectedInput

from compositor.errors import MeaningKindError, SpecError


@dataclass(frozen=True)
class Symbol:
    """Aplicación simbólica opaca, p. ej. open(seas)."""

    name: str
    args: Tuple["MeaningValue", ...] = ()

    def __str__(self) -> str:
        return render_meaning(self)


MeaningValue = Union[bool, int, Fraction, Symbol, Tuple[Any, ...]]


def kind_of(v: Any) -> str:
    if isinstance(v, bool):
        return "bool"
    if isinstance(v, int):
        return "int"
    if isinstance(v, Fraction):
        return "rational"
    if isinstance(v, Symbol):
        return "symbol"
    if isinstance(v, tuple):
        return "tuple"
    raise MeaningKindError(f"Valor de significado no admitido: {v!r} ({type(v).__name__})")


def same_meaning(a: Any, b: Any) -> bool:
    ka, kb = kind_of(a), kind_of(b)
    if ka != kb:
        return False
    if ka == "tuple":
        return len(a) == len(b) and all(same_meaning(x, y) for x, y in zip(a, b))
    if ka == "symbol":
        return a.name == b.name and same_meaning(a.args, b.args)
    return a == b


def render_meaning(v: Any) -> str:
    k = kind_of(v)
    if k == "bool":
        return "1" if v else "0"
    if k == "rational":
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if k == "symbol":
        if not v.args:
            return v.name
        return f"{v.name}(" + ", ".join(render_meaning(a) for a in v.args) + ")"
    if k == "tuple":
        return "<" + ", ".join(render_meaning(a) for a in v) + ">"
    return str(v)


# =========================
# Literales en ficheros de especificación
# =========================
_RATIONAL = re.compile(r"^\s*(-?\d+)\s*/\s*(\d+)\s*$")

_SYMBOL_GRAMMAR = r"""
?value: symbol
      | SIGNED_INT            -> int_
      | RATIONAL              -> rat
symbol: NAME ["(" value ("," value)* ")"]
NAME: /[A-Za-z_][A-Za-z0-9_\-]*/
RATIONAL.2: /-?\d+\/\d+/
%import common.SIGNED_INT
%import common.WS
%ignore WS
"""


class _SymbolBuilder(Transformer):
    def int_(self, items):
        return int(items[0])

    def rat(self, items):
        num, den = str(items[0]).split("/")
        return Fraction(int(num), int(den))

    def symbol(self, items):
        name = str(items[0])
        args = tuple(a for a in items[1:] if a is not None)
        return Symbol(name, args)


_symbol_parser = Lark(_SYMBOL_GRAMMAR, parser="lalr", start="value")


def parse_meaning(raw: Any) -> MeaningValue:
    """Convierte un literal YAML/JSON en MeaningValue.

    bool/int tal cual, listas → tuplas, "p/q" o {num, den} → Fraction,
    cualquier otra cadena → Symbol ("open(seas)", "wall").
    """
    if isinstance(raw, bool) or isinstance(raw, int):
        return raw
    if isinstance(raw, Fraction):
        return raw
    if isinstance(raw, list | tuple):
        return tuple(parse_meaning(x) for x in raw)
    if isinstance(raw, dict):
        if set(raw) == {"num", "den"}:
            return Fraction(int(raw["num"]), int(raw["den"]))
        raise SpecError(f"Literal de significado no reconocido: {raw!r}")
    if isinstance(raw, str):
        m = _RATIONAL.match(raw)
        if m:
            return Fraction(int(m.group(1)), int(m.group(2)))
        try:
            value = _SymbolBuilder().transform(_symbol_parser.parse(raw))
        except UnexpectedInput as exc:
            raise SpecError(f"Literal de significado mal formado: {raw!r} ({exc.__class__.__name__})") from None
        return value
    raise SpecError(f"Literal de significado no admitido: {raw!r}")


# =========================
# Codificación JSON etiquetada
# =========================
def meaning_to_json(v: Any) -> Any:
    k = kind_of(v)
    if k in ("bool", "int"):
        return v
    if k == "rational":
        return {"rat": [v.numerator, v.denominator]}
    if k == "symbol":
        return {"sym": v.name, "args": [meaning_to_json(a) for a in v.args]}
    return {"tuple": [meaning_to_json(a) for a in v]}


def meaning_from_json(data: Any) -> MeaningValue:
    if isinstance(data, bool) or isinstance(data, int):
        return data
    if isinstance(data, dict):
        if "rat" in data:
            num, den = data["rat"]
            return Fraction(int(num), int(den))
        if "sym" in data:
            return Symbol(str(data["sym"]), tuple(meaning_from_json(a) for a in data.get("args", [])))
        if "tuple" in data:
            return tuple(meaning_from_json(a) for a in data["tuple"])
    raise SpecError(f"Valor serializado no reconocido: {data!r}")
