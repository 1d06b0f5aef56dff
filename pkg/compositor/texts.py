# -*- coding: utf-8 -*-

"""
Textos reutilizables de la salida humana de la CLI.

Las plantillas usan str.format; los valores ya llegan formateados
(términos con render_term, significados con render_meaning).
"""

# ==========================================================
# CABECERAS
# ==========================================================
ENCODE_HEADER = "🧮 Codificación μ de «{subject}» (variante {variant})"
REPLAY_HEADER = "🔁 Reproduciendo {items} elementos (spec {digest})"


# ==========================================================
# INFORMES DE VERIFICACIÓN
# ==========================================================
REPORT_LINE = "{emoji} {status}: {terms} términos y {pairs} pares comprobados, {violations} violaciones"
VIOLATION_LINE = "   - {equation}: {left} ≠ {right}"


# ==========================================================
# CERTIFICADOS
# ==========================================================
FITTED_POLY = "✅ Fitted (grado ≤ {degree}): p(x, y) = {polynomial}"
FITTED_POLY_NATURAL = "   Coeficientes naturales: {natural}"
FITTED_TABLE = "✅ Fitted: el valor es función de los argumentos ({rows} combinaciones observadas)"
FITTED_TABLE_ROW = "   {args} ↦ {target}"
REFUTED_INCONSISTENCY = "❌ RefutedByInconsistency: mismos argumentos, distinto valor"
REFUTED_INFEASIBILITY = "❌ RefutedByInfeasibility (grado ≤ {degree}): {count} puntos sin interpolante común"
HELD_OUT_LINE = "   El interpolante {polynomial} falla en {point}"
UNDERDETERMINED = "⚠️ Underdetermined (grado ≤ {degree}): {count} puntos, dimensión libre {dimension}"
SAMPLE_LINE = "   • {sample}"


# ==========================================================
# ENUMERACIÓN Y REPLAY
# ==========================================================
ENUMERATE_ENTRY = "{source}[{row}, {pair}] = {entry}"
REPLAY_OK = "✅ Todas las comprobaciones se reproducen."
REPLAY_FAIL = "❌ Alguna comprobación no se reproduce."
BUNDLE_WRITTEN = "📂 Informe guardado en {path} (sha1 {digest})"


# ==========================================================
# ERRORES
# ==========================================================
ERROR_INVALID = "❌ Entrada no válida: {error}"
ERROR_IO = "❌ Error de E/S: {error}"
ERROR_RESOURCE = "❌ Límite de recursos: {error}"
ERROR_OUT_OF_RANGE = "❌ Fuera de rango: {error}"
ERROR_DIGEST = "❌ El informe no corresponde a esta especificación: {error}"
