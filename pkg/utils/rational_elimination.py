# -*- coding: utf-8 -*-
"""
Eliminación de Gauss-Jordan exacta sobre Fraction.

Pivoteo determinista: primera columna no nula. Las filas se añaden de una
en una para detectar en qué momento el sistema deja de ser compatible.
Con track=True cada fila guarda su combinación de filas originales, de modo
que una incompatibilidad se puede atribuir a un subconjunto concreto.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

Number = int | Fraction
Combo = Dict[int, Fraction]


class RowStatus(str, Enum):
    PIVOT = "pivot"            # la fila aumenta el rango
    REDUNDANT = "redundant"    # combinación lineal compatible
    INCONSISTENT = "inconsistent"


@dataclass
class RationalEliminator:
    """Sistema lineal A·x = b en forma escalonada reducida, incremental."""

    n_cols: int
    track: bool = False
    _rows: List[List[Fraction]] = field(default_factory=list)   # aumentadas, pivote = 1
    _pivots: List[int] = field(default_factory=list)
    _combos: List[Combo] = field(default_factory=list)
    _added: int = 0
    consistent: bool = True
    conflict: Optional[Combo] = None   # combinación que da 0 = c ≠ 0

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def nullity(self) -> int:
        return self.n_cols - self.rank

    def _reduce(self, coeffs: Sequence[Number], rhs: Number) -> Tuple[List[Fraction], Combo]:
        if len(coeffs) != self.n_cols:
            raise ValueError(f"Se esperaban {self.n_cols} coeficientes, llegaron {len(coeffs)}")
        row = [Fraction(c) for c in coeffs] + [Fraction(rhs)]
        combo: Combo = {self._added: Fraction(1)} if self.track else {}
        for i, (prow, pc) in enumerate(zip(self._rows, self._pivots)):
            f = row[pc]
            if f:
                for c in range(pc, self.n_cols + 1):
                    row[c] -= f * prow[c]
                if self.track:
                    _axpy(combo, -f, self._combos[i])
        return row, combo

    def classify(self, coeffs: Sequence[Number], rhs: Number) -> RowStatus:
        """Estado que tendría la fila sin añadirla."""
        row, _ = self._reduce(coeffs, rhs)
        if any(row[: self.n_cols]):
            return RowStatus.PIVOT
        return RowStatus.INCONSISTENT if row[self.n_cols] else RowStatus.REDUNDANT

    def add_row(self, coeffs: Sequence[Number], rhs: Number) -> RowStatus:
        row, combo = self._reduce(coeffs, rhs)
        self._added += 1
        pc = next((c for c in range(self.n_cols) if row[c]), None)
        if pc is None:
            if row[self.n_cols]:
                if self.consistent and self.track:
                    self.conflict = combo
                self.consistent = False
                return RowStatus.INCONSISTENT
            return RowStatus.REDUNDANT

        piv = row[pc]
        row = [v / piv for v in row]
        if self.track:
            combo = {k: v / piv for k, v in combo.items()}
        # Gauss-Jordan: la nueva columna pivote queda a cero en el resto de filas
        for i, prow in enumerate(self._rows):
            f = prow[pc]
            if f:
                for c in range(self.n_cols + 1):
                    prow[c] -= f * row[c]
                if self.track:
                    _axpy(self._combos[i], -f, combo)
        self._rows.append(row)
        self._pivots.append(pc)
        if self.track:
            self._combos.append(combo)
        return RowStatus.PIVOT

    def solution(self) -> Optional[List[Fraction]]:
        """Solución particular con variables libres a 0; None si es incompatible."""
        if not self.consistent:
            return None
        sol = [Fraction(0)] * self.n_cols
        for prow, pc in zip(self._rows, self._pivots):
            sol[pc] = prow[self.n_cols]
        return sol


def _axpy(target: Combo, a: Fraction, src: Combo) -> None:
    for k, v in src.items():
        nv = target.get(k, Fraction(0)) + a * v
        if nv:
            target[k] = nv
        else:
            target.pop(k, None)


def solve_system(rows: Sequence[Tuple[Sequence[Number], Number]], n_cols: int) -> RationalEliminator:
    elim = RationalEliminator(n_cols)
    for coeffs, rhs in rows:
        elim.add_row(coeffs, rhs)
    return elim


def is_feasible(rows: Sequence[Tuple[Sequence[Number], Number]], n_cols: int) -> bool:
    return solve_system(rows, n_cols).consistent


def infeasibility_support(rows: Sequence[Tuple[Sequence[Number], Number]], n_cols: int) -> List[int]:
    """Filas que intervienen en la primera incompatibilidad (vacío si el sistema es compatible)."""
    elim = RationalEliminator(n_cols, track=True)
    for coeffs, rhs in rows:
        if elim.add_row(coeffs, rhs) == RowStatus.INCONSISTENT:
            return sorted(elim.conflict or ())
    return []


def minimal_infeasible_subset(
    rows: Sequence[Tuple[Sequence[Number], Number]], n_cols: int
) -> List[int]:
    """Índices de un subconjunto incompatible minimal.

    Parte del soporte de la incompatibilidad y aplica un filtro por borrado:
    quitar cualquier fila del resultado lo vuelve compatible.
    """
    keep = infeasibility_support(rows, n_cols)
    if not keep:
        raise ValueError("El sistema es compatible: no hay subconjunto incompatible")
    i = 0
    while i < len(keep):
        trial = keep[:i] + keep[i + 1:]
        if not is_feasible([rows[j] for j in trial], n_cols):
            keep = trial
        else:
            i += 1
    return keep
