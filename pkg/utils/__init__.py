"""Utilidades globales del proyecto.

Helpers que no dependen del dominio y se usan desde varios módulos:
lectura de ficheros y env vars, JSON canónico, logging y eliminación exacta.
"""

__all__ = ["helpers", "log", "rational_elimination", "report_formatter"]
