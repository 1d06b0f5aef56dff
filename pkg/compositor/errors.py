# -*- coding: utf-8 -*-
"""Excepciones del compositor.

Cada error deriva también del builtin equivalente para que el código que
sólo conoce ValueError/TypeError/IndexError pueda capturarlo igual.
"""

from __future__ import annotations

from typing import Iterable, Optional


class CompositorError(Exception):
    """Raíz de todos los errores del paquete."""


class TermSyntaxError(CompositorError, ValueError):
    """Cadena entre paréntesis mal formada."""

    def __init__(self, message: str, position: Optional[int] = None):
        self.position = position
        if position is not None:
            message = f"{message} (posición {position})"
        super().__init__(message)


class FragmentError(CompositorError, ValueError):
    """El fragmento viola sus invariantes de clausura."""


class UndefinedCompositionError(CompositorError, LookupError):
    """El par (s, t) no está en el dominio de la concatenación parcial."""


class UndefinedApplicationError(CompositorError, LookupError):
    """μ(s) no está definida sobre el argumento dado."""


class MissingMeaningError(CompositorError, ValueError):
    """La asignación m no es total sobre el fragmento."""

    def __init__(self, missing: Iterable[str]):
        self.missing = tuple(missing)
        super().__init__("Faltan significados para: " + ", ".join(self.missing))


class GrammarError(CompositorError, ValueError):
    """Entrada no generada por la gramática pedida."""


class CoordinationError(CompositorError, ValueError):
    """Expresión fuera del fragmento de coordinación."""


class UnboundVariableError(CoordinationError, LookupError):
    """Variable sin valor en la asignación booleana."""


class MeaningKindError(CompositorError, TypeError):
    """Valores de tipos mezclados o no admitidos por la clase de funciones."""


class OutOfRangeError(CompositorError, IndexError):
    """Índice fuera del flujo o de la fila."""


class CertificateMismatchError(CompositorError, ValueError):
    """El certificado no corresponde a las muestras dadas."""


class DigestMismatchError(CompositorError, ValueError):
    """El bundle se generó con otra especificación."""


class ResourceLimitError(CompositorError, RuntimeError):
    """Se superó un límite configurado."""


class SpecError(CompositorError, ValueError):
    """Fichero de especificación inválido."""
