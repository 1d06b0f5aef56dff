#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Convierte informes, certificados y tablas μ en texto legible para la consola.
Uso:
    from utils.report_formatter import ReportFormatter
"""

from typing import List

from rich.table import Table

from compositor import texts
from compositor.certlib import CertificateRecord, ReportBundle
from compositor.encoder import MuTable
from compositor.meanings import render_meaning
from compositor.reports import VerificationReport
from compositor.systematicity import (
    Certificate,
    FittedPolynomial,
    FittedTable,
    RefutedByInconsistency,
    RefutedByInfeasibility,
    Underdetermined,
)


class ReportFormatter:
    """Formateador de los elementos de un ReportBundle para la salida humana."""

    @staticmethod
    def report_to_text(r: VerificationReport) -> str:
        lines = [
            texts.ENCODE_HEADER.format(subject=r.subject, variant=r.variant),
            texts.REPORT_LINE.format(
                emoji="✅" if r.passed else "❌",
                status=r.status,
                terms=r.terms_checked,
                pairs=r.pairs_checked,
                violations=len(r.violations),
            ),
        ]
        lines += [texts.VIOLATION_LINE.format(equation=v.equation, left=v.left, right=v.right) for v in r.violations]
        return "\n".join(lines)

    @staticmethod
    def certificate_to_text(c: Certificate) -> str:
        if isinstance(c, FittedPolynomial):
            lines = [texts.FITTED_POLY.format(degree=c.degree, polynomial=c.describe())]
            lines.append(texts.FITTED_POLY_NATURAL.format(natural="sí" if c.natural else "no"))
            return "\n".join(lines)

        if isinstance(c, FittedTable):
            lines = [texts.FITTED_TABLE.format(rows=len(c.rows))]
            for args, target in c.rows:
                shown = "(" + ", ".join(render_meaning(a) for a in args) + ")"
                lines.append(texts.FITTED_TABLE_ROW.format(args=shown, target=render_meaning(target)))
            return "\n".join(lines)

        if isinstance(c, RefutedByInconsistency):
            return "\n".join([
                texts.REFUTED_INCONSISTENCY,
                texts.SAMPLE_LINE.format(sample=c.first),
                texts.SAMPLE_LINE.format(sample=c.second),
            ])

        if isinstance(c, RefutedByInfeasibility):
            lines = [texts.REFUTED_INFEASIBILITY.format(degree=c.degree, count=len(c.witness))]
            lines += [texts.SAMPLE_LINE.format(sample=s) for s in c.witness]
            if c.interpolant is not None and c.held_out is not None:
                p = FittedPolynomial(c.degree, c.interpolant)
                lines.append(texts.HELD_OUT_LINE.format(polynomial=p.describe(), point=c.held_out))
            return "\n".join(lines)

        if isinstance(c, Underdetermined):
            lines = [texts.UNDERDETERMINED.format(degree=c.degree, count=len(c.selected), dimension=c.dimension)]
            lines += [texts.SAMPLE_LINE.format(sample=s) for s in c.selected]
            return "\n".join(lines)

        return str(c)

    @staticmethod
    def table_to_rich(t: MuTable) -> Table:
        """Tabla μ: una fila por término con sus pares <argumento, valor>."""
        table = Table(title=f"μ — {t.subject} ({t.variant})", show_lines=False)
        table.add_column("#", justify="right")
        table.add_column("término")
        table.add_column("pares")
        for i, row in enumerate(t.rows):
            table.add_row(str(i), str(row.term), "  ".join(str(e) for e in row.entries))
        return table

    @staticmethod
    def bundle_to_text(b: ReportBundle) -> str:
        """Texto de todos los elementos salvo las tablas (que se pintan con table_to_rich)."""
        blocks: List[str] = []
        for item in b.items:
            if isinstance(item, VerificationReport):
                blocks.append(ReportFormatter.report_to_text(item))
            elif isinstance(item, CertificateRecord):
                head = f"— {item.subject}" + (f" (grado {item.degree})" if item.degree is not None else "")
                blocks.append(head + "\n" + ReportFormatter.certificate_to_text(item.certificate))
        return "\n\n".join(blocks)
