# -*- coding: utf-8 -*-
"""Informe de verificación de las ecuaciones de μ (reexportado en certlib)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple


@dataclass(frozen=True)
class Violation:
    equation: str
    left: str
    right: str


@dataclass(frozen=True)
class VerificationReport:
    subject: str
    variant: str
    terms_checked: int
    pairs_checked: int
    violations: Tuple[Violation, ...] = ()

    @property
    def status(self) -> str:
        return "PASS" if not self.violations else "FAIL"

    @property
    def passed(self) -> bool:
        return not self.violations
